// Copyright 2026 The Tomocast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tomocast/dilation.hpp"

#include <istream>
#include <iterator>

#include "tomocast/errors.hpp"
#include "tomocast/io.hpp"
#include "tomocast/random.hpp"

namespace tomocast {

namespace {

void check_dims(Eigen::Index n_s, Eigen::Index n_e, const char *what) {
  if (n_s < 1 || n_e < 1) throw DimensionError(std::string(what) + ": n_s and n_e must be positive");
}

void check_composite(const CMatrix &u, Eigen::Index n_s, Eigen::Index n_e, const char *what) {
  check_dims(n_s, n_e, what);
  require_square(u, what);
  if (u.rows() != n_s * n_e) {
    throw DimensionError(std::string(what) + ": matrix size " + std::to_string(u.rows()) +
                         " is not n_s * n_e = " + std::to_string(n_s * n_e));
  }
}

}  // namespace

double completeness_residual(const KrausSet &kraus) {
  check_dims(kraus.sys_dim, kraus.env_dim, "KrausSet");
  if (static_cast<Eigen::Index>(kraus.operators.size()) != kraus.env_dim) {
    throw DimensionError("KrausSet: expected " + std::to_string(kraus.env_dim) + " operators, got " +
                         std::to_string(kraus.operators.size()));
  }
  CMatrix sum = CMatrix::Zero(kraus.sys_dim, kraus.sys_dim);
  for (const CMatrix &e : kraus.operators) {
    if (e.rows() != kraus.sys_dim || e.cols() != kraus.sys_dim) {
      throw DimensionError("KrausSet: operators must be n_s x n_s");
    }
    sum += e.adjoint() * e;
  }
  return (sum - CMatrix::Identity(kraus.sys_dim, kraus.sys_dim)).norm();
}

CMatrix kraus_to_unitary(const KrausSet &kraus, std::uint64_t seed) {
  const double residual = completeness_residual(kraus);
  if (!(residual <= kCompletenessTol)) throw KrausError(residual);
  const Eigen::Index ns = kraus.sys_dim;
  const Eigen::Index ne = kraus.env_dim;
  const Eigen::Index n = ns * ne;
  CMatrix u = CMatrix::Zero(n, n);
  std::vector<Eigen::Index> fixed;
  std::vector<Eigen::Index> free;
  for (Eigen::Index j = 0; j < ns; ++j) {
    for (Eigen::Index alpha = 0; alpha < ne; ++alpha) {
      (alpha == 0 ? fixed : free).push_back(j * ne + alpha);
    }
    for (Eigen::Index i = 0; i < ns; ++i) {
      for (Eigen::Index alpha = 0; alpha < ne; ++alpha) u(i * ne + alpha, j * ne) = kraus.operators[alpha](i, j);
    }
  }
  Rng rng(seed);
  std::vector<Eigen::Index> done = fixed;
  for (Eigen::Index col : free) {
    CVector v;
    double len = 0.0;
    do {
      v = random_complex(rng, n, 1);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index c : done) v -= u.col(c).dot(v) * u.col(c);
      }
      len = v.norm();
    } while (len < 1e-6);
    u.col(col) = v / len;
    done.push_back(col);
  }
  return u;
}

KrausSet osr_from_unitary(const CMatrix &u, Eigen::Index n_s, Eigen::Index n_e) {
  check_composite(u, n_s, n_e, "osr_from_unitary");
  KrausSet out{n_s, n_e, {}};
  for (Eigen::Index k = 0; k < n_e; ++k) {
    CMatrix e(n_s, n_s);
    for (Eigen::Index i = 0; i < n_s; ++i) {
      for (Eigen::Index j = 0; j < n_s; ++j) e(i, j) = u(i * n_e + k, j * n_e);
    }
    out.operators.push_back(std::move(e));
  }
  return out;
}

CMatrix random_centralizer_element(Eigen::Index n_s, Eigen::Index n_e, std::uint64_t seed) {
  check_dims(n_s, n_e, "random_centralizer_element");
  const Eigen::Index n = n_s * n_e;
  CMatrix q = CMatrix::Identity(n, n);
  if (n_e == 1) return q;
  std::vector<Eigen::Index> free;
  for (Eigen::Index idx = 0; idx < n; ++idx) {
    if (idx % n_e != 0) free.push_back(idx);
  }
  Rng rng(seed);
  const CMatrix v = haar_unitary(rng, static_cast<Eigen::Index>(free.size()));
  for (std::size_t a = 0; a < free.size(); ++a) {
    for (std::size_t b = 0; b < free.size(); ++b) q(free[a], free[b]) = v(a, b);
  }
  return q;
}

CMatrix partial_trace_env(const CMatrix &m, Eigen::Index n_s, Eigen::Index n_e) {
  check_composite(m, n_s, n_e, "partial_trace_env");
  CMatrix out = CMatrix::Zero(n_s, n_s);
  for (Eigen::Index i = 0; i < n_s; ++i) {
    for (Eigen::Index j = 0; j < n_s; ++j) {
      for (Eigen::Index alpha = 0; alpha < n_e; ++alpha) out(i, j) += m(i * n_e + alpha, j * n_e + alpha);
    }
  }
  return out;
}

CMatrix apply_dilated(const CMatrix &u, const CMatrix &rho, Eigen::Index n_e) {
  require_square(rho, "apply_dilated");
  const Eigen::Index ns = rho.rows();
  check_composite(u, ns, n_e, "apply_dilated");
  CMatrix ref = CMatrix::Zero(n_e, n_e);
  ref(0, 0) = 1.0;
  return partial_trace_env(u * kron(rho, ref) * u.adjoint(), ns, n_e);
}

CMatrix apply_kraus(const KrausSet &kraus, const CMatrix &rho) {
  completeness_residual(kraus);
  require_square(rho, "apply_kraus");
  if (rho.rows() != kraus.sys_dim) throw DimensionError("apply_kraus: operator dimension mismatch");
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const CMatrix &e : kraus.operators) out += e * rho * e.adjoint();
  return out;
}

bool equivalence_check(const CMatrix &u, const CMatrix &w, Eigen::Index n_s, Eigen::Index n_e,
                       double tol) {
  check_composite(u, n_s, n_e, "equivalence_check");
  check_composite(w, n_s, n_e, "equivalence_check");
  for (Eigen::Index i = 0; i < n_s; ++i) {
    for (Eigen::Index j = 0; j < n_s; ++j) {
      CMatrix e = CMatrix::Zero(n_s, n_s);
      e(i, j) = 1.0;
      if ((apply_dilated(u, e, n_e) - apply_dilated(w, e, n_e)).norm() > tol) return false;
    }
  }
  return true;
}

KrausSet mix_kraus(const KrausSet &kraus, const CMatrix &v) {
  completeness_residual(kraus);
  if (v.rows() != kraus.env_dim || v.cols() != kraus.env_dim) {
    throw DimensionError("mix_kraus: mixing matrix must be n_e x n_e");
  }
  KrausSet out{kraus.sys_dim, kraus.env_dim, {}};
  for (Eigen::Index k = 0; k < kraus.env_dim; ++k) {
    CMatrix f = CMatrix::Zero(kraus.sys_dim, kraus.sys_dim);
    for (Eigen::Index j = 0; j < kraus.env_dim; ++j) f += v(k, j) * kraus.operators[j];
    out.operators.push_back(std::move(f));
  }
  return out;
}

KrausSet load_kraus(const std::string &text) {
  const json doc = parse_json(text, "kraus");
  if (!doc.is_object() || !doc.contains("n_s") || !doc.contains("n_e") || !doc.contains("operators")) {
    throw ParseError("kraus: expected an object with \"n_s\", \"n_e\" and \"operators\"");
  }
  if (!doc["n_s"].is_number_integer() || !doc["n_e"].is_number_integer() || !doc["operators"].is_array()) {
    throw ParseError("kraus: n_s and n_e must be integers and operators an array");
  }
  KrausSet out{doc["n_s"].get<Eigen::Index>(), doc["n_e"].get<Eigen::Index>(), {}};
  const json &ops = doc["operators"];
  for (std::size_t k = 0; k < ops.size(); ++k) {
    out.operators.push_back(matrix_from_json(ops[k], "operators[" + std::to_string(k) + "]"));
  }
  completeness_residual(out);
  return out;
}

KrausSet load_kraus(std::istream &in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_kraus(text);
}

std::string emit_kraus(const KrausSet &kraus) {
  json doc;
  doc["n_s"] = kraus.sys_dim;
  doc["n_e"] = kraus.env_dim;
  json ops = json::array();
  for (const CMatrix &e : kraus.operators) ops.push_back(matrix_to_json(e));
  doc["operators"] = std::move(ops);
  return doc.dump();
}

}  // namespace tomocast
