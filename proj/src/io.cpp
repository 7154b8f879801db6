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

#include "tomocast/io.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "tomocast/errors.hpp"

namespace tomocast {

json matrix_to_json(const CMatrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json &j, const std::string &context) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(context + ": expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ParseError(context + ": rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json &row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(context + ": ragged row " + std::to_string(r));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json &entry = row[static_cast<std::size_t>(c)];
      double re = 0.0;
      double im = 0.0;
      if (entry.is_number()) {
        re = entry.get<double>();
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                 entry[1].is_number()) {
        re = entry[0].get<double>();
        im = entry[1].get<double>();
      } else {
        throw ParseError(context + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") must be [re, im]");
      }
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw ParseError(context + ": non-finite entry");
      }
      m(r, c) = cdouble(re, im);
    }
  }
  return m;
}

json parse_json(const std::string &text, const std::string &context) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(context + ": " + e.what());
  }
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace tomocast
