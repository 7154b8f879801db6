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

#include "tomocast/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tomocast/dilation.hpp"
#include "tomocast/distributions.hpp"
#include "tomocast/errors.hpp"
#include "tomocast/io.hpp"
#include "tomocast/oracles.hpp"
#include "tomocast/predictor.hpp"
#include "tomocast/rational.hpp"
#include "tomocast/snapshot.hpp"

namespace tomocast::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "IoError"; }
};

constexpr std::uint64_t kDefaultSeed = 0x5eedULL;

double parse_number(const std::string &text, const std::string &what) {
  double x = 0.0;
  const char *first = text.data();
  const char *last = first + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x)) {
    throw ConfigError(what + ": '" + text + "' is not a finite number");
  }
  return x;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Settings {
  std::string input;
  std::string observable;
  std::string state;
  std::string kraus;
  std::string output;
  std::string family;
  std::string weights;
  double a = 1.0;
  std::int64_t m = 1;
  std::string t_spec;
  std::string times_spec;
  std::size_t grid = 1000;
  double t_max = 2.0 * std::numbers::pi;
  std::optional<std::uint64_t> seed;
  std::int64_t qmax = kDefaultQMax;
  double rtol = kDefaultRationalTol;
  double tol = 1e-8;
  double epsilon = 0.1;
  std::int64_t rmax = 100000;
  double beta = 0.0;
};

std::uint64_t resolve_seed(const Settings &s) {
  if (s.seed) return *s.seed;
  const char *env = std::getenv("TOMOCAST_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t v = 0;
  const std::string text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("TOMOCAST_SEED must be a nonnegative integer, got '" + text + "'");
  }
  return v;
}

void check_tolerances(const Settings &s) {
  if (!(s.rtol > 0.0) || !(s.tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (s.qmax < 1) throw ConfigError("--qmax must be at least 1");
}

PriorDistribution make_prior(const Settings &s) {
  if (s.family.empty()) throw ConfigError("--family is required");
  if (parse_family(s.family) != Family::Custom) return PriorDistribution::from_name(s.family, s.a, s.m);
  if (s.weights.empty()) throw ConfigError("--family custom needs --weights k:w,k:w,...");
  std::map<std::int64_t, double> table;
  std::stringstream list(s.weights);
  std::string item;
  while (std::getline(list, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("--weights entries must be k:w");
    const double k = parse_number(item.substr(0, colon), "--weights");
    if (k != std::round(k)) throw ConfigError("--weights keys must be integers");
    table[static_cast<std::int64_t>(k)] += parse_number(item.substr(colon + 1), "--weights");
  }
  return PriorDistribution::custom(table);
}

PredictorOptions predictor_options(const Settings &s) {
  check_tolerances(s);
  PredictorOptions opts;
  opts.q_max = s.qmax;
  opts.rtol = s.rtol;
  opts.branch.tol = s.tol;
  opts.seed = resolve_seed(s);
  return opts;
}

TomographySet load_input(const Settings &s) {
  if (s.input.empty()) throw ConfigError("--input is required");
  return load_tomography(read_file(s.input));
}

class Sink {
 public:
  Sink(const std::string &path, std::ostream &fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream &fallback_;
};

json string_list(const std::vector<std::string> &v) {
  json out = json::array();
  for (const std::string &s : v) out.push_back(s);
  return out;
}

int cmd_validate(const Settings &s, std::ostream &out, std::ostream &err) {
  const PredictorOptions opts = predictor_options(s);
  const TomographySet set = load_input(s);
  const BlockDecomposition decomp = shared_eigenspaces(set, opts.cluster_tol, opts.seed);
  const RationalStructure structure = rationalize(set.times, opts.q_max, opts.rtol);
  const ConsistencyReport report = validate_consistency(set, decomp, structure, opts.branch.tol);
  json doc;
  doc["consistent"] = report.consistent;
  doc["kappa"] = decomp.kappa();
  json dims = json::array();
  for (const Block &b : decomp.blocks) dims.push_back(b.dim);
  doc["block_dims"] = std::move(dims);
  doc["rational"] = structure.rational;
  doc["gamma"] = structure.gamma;
  doc["lcm_q"] = structure.lcm_q;
  doc["block_energies"] = report.block_energies;
  doc["block_residuals"] = report.block_residuals;
  doc["warnings"] = string_list(report.warnings);
  if (!report.consistent) {
    doc["error"] = "NotConsistentError";
    doc["message"] = report.message;
    err << doc.dump() << '\n';
    return 2;
  }
  Sink sink(s.output, out);
  sink.stream() << doc.dump(2) << '\n';
  return 0;
}

int cmd_predict(const Settings &s, std::ostream &out) {
  if (s.observable.empty()) throw ConfigError("--observable is required");
  if (s.t_spec.empty()) throw ConfigError("--t is required");
  const double t = parse_number(s.t_spec, "--t");
  const PredictedChannel channel =
      PredictedChannel::from_tomography(load_input(s), make_prior(s), predictor_options(s));
  const CMatrix a = matrix_from_json(parse_json(read_file(s.observable), "observable"), "observable");
  const CMatrix result = apply(channel, t, a);
  Sink sink(s.output, out);
  sink.stream() << matrix_to_json(result).dump() << '\n';
  return 0;
}

int cmd_trajectory(const Settings &s, std::ostream &out) {
  if (s.state.empty()) throw ConfigError("--state is required");
  const std::string spec = !s.times_spec.empty() ? s.times_spec : s.t_spec;
  if (spec.empty()) throw ConfigError("--times is required");
  const std::vector<double> times = parse_time_grid(spec);
  const PredictedChannel channel =
      PredictedChannel::from_tomography(load_input(s), make_prior(s), predictor_options(s));
  const CMatrix rho0 = matrix_from_json(parse_json(read_file(s.state), "state"), "state");
  const std::vector<CMatrix> states = trajectory(channel, rho0, times);
  const Eigen::Index d = channel.dim();
  Sink sink(s.output, out);
  std::ostream &os = sink.stream();
  os << 't';
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) os << ",re_" << i << '_' << j << ",im_" << i << '_' << j;
  }
  os << ",purity\n";
  for (std::size_t n = 0; n < times.size(); ++n) {
    const CMatrix &rho = states[n];
    os << format_double(times[n]);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        os << ',' << format_double(rho(i, j).real()) << ',' << format_double(rho(i, j).imag());
      }
    }
    os << ',' << format_double((rho * rho).trace().real()) << '\n';
  }
  return 0;
}

int cmd_charfun(const Settings &s, std::ostream &out) {
  if (s.grid < 1) throw ConfigError("--grid must be at least 1");
  if (!(s.t_max > 0.0)) throw ConfigError("--tmax must be positive");
  const PriorDistribution dist = make_prior(s);
  Sink sink(s.output, out);
  std::ostream &os = sink.stream();
  os << "t,phi_abs2\n";
  for (double t : uniform_grid(s.grid, s.t_max)) {
    os << format_double(t) << ',' << format_double(std::norm(dist.char_fn(t))) << '\n';
  }
  return 0;
}

int cmd_adversary(const Settings &s, std::ostream &out) {
  const TomographySet set = load_input(s);
  check_tolerances(s);
  const BlockDecomposition decomp = shared_eigenspaces(set, kDefaultClusterTol, resolve_seed(s));
  const RationalStructure structure = rationalize(set.times, s.qmax, s.rtol);
  BranchOptions branch;
  branch.tol = s.tol;
  const AdmissibleHamiltonian hhat = extract_min_norm_hamiltonian(decomp, structure, set.times, branch);
  AdversaryOptions opts;
  opts.beta = s.beta;
  const AdversaryResult res = diophantine_adversary(set, decomp, hhat, s.epsilon, s.rmax, opts);
  json doc;
  doc["r"] = res.r;
  doc["residuals"] = res.residuals;
  doc["distance"] = res.distance;
  doc["hamiltonian"] = matrix_to_json(res.h);
  Sink sink(s.output, out);
  sink.stream() << doc.dump() << '\n';
  return 0;
}

int cmd_dilate(const Settings &s, std::ostream &out) {
  const std::string path = !s.kraus.empty() ? s.kraus : s.input;
  if (path.empty()) throw ConfigError("--kraus is required");
  const KrausSet kraus = load_kraus(read_file(path));
  const CMatrix u = kraus_to_unitary(kraus, resolve_seed(s));
  Sink sink(s.output, out);
  sink.stream() << matrix_to_json(u).dump() << '\n';
  return 0;
}

struct DemoPanel {
  const char *file;
  Family family;
  std::vector<double> params;
};

int cmd_demo(const Settings &s, std::ostream &out) {
  const std::filesystem::path dir = s.output.empty() ? std::filesystem::path(".") : std::filesystem::path(s.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "'");
  const std::vector<DemoPanel> panels = {
      {"exponential.csv", Family::Exponential, {0.25, 0.5, 1.0, 2.0}},
      {"truncated_uniform.csv", Family::TruncatedUniform, {0, 1, 2, 5}},
      {"semicircular.csv", Family::Semicircular, {0, 1, 2, 5}},
      {"cauchy_lorentz.csv", Family::CauchyLorentz, {0.25, 0.5, 1.0, 2.0}},
      {"binomial.csv", Family::Binomial, {1, 2, 5, 10}},
      {"normal.csv", Family::Normal, {0.05, 0.2, 0.5, 2.0}},
  };
  const std::vector<double> grid = uniform_grid(1000, 4.0 * std::numbers::pi);
  for (const DemoPanel &panel : panels) {
    const bool uses_a = panel.family == Family::Exponential || panel.family == Family::CauchyLorentz ||
                        panel.family == Family::Normal;
    std::vector<PriorDistribution> dists;
    const std::filesystem::path path = dir / panel.file;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << 't';
    for (double p : panel.params) {
      if (uses_a) {
        dists.push_back(PriorDistribution::from_name(family_name(panel.family), p, 0));
        os << ",a=" << format_double(p);
      } else {
        const auto m = static_cast<std::int64_t>(p);
        dists.push_back(PriorDistribution::from_name(family_name(panel.family), 1.0, m));
        os << ",m=" << m;
      }
    }
    os << '\n';
    for (double t : grid) {
      os << format_double(t);
      for (const PriorDistribution &d : dists) os << ',' << format_double(std::norm(d.char_fn(t)));
      os << '\n';
    }
    out << path.string() << '\n';
  }
  return 0;
}

json diagnostic(const Error &e) {
  json doc;
  doc["error"] = e.kind();
  doc["message"] = e.what();
  if (const auto *u = dynamic_cast<const UnitarityError *>(&e)) {
    doc["index"] = u->index;
    doc["residual"] = u->residual;
  } else if (const auto *c = dynamic_cast<const InconsistencyError *>(&e)) {
    doc["pair"] = {c->j, c->k};
    doc["commutator_norm"] = c->norm;
  } else if (const auto *n = dynamic_cast<const NotConsistentError *>(&e)) {
    doc["block"] = n->block;
    doc["best_residual"] = n->best_residual;
  } else if (const auto *x = dynamic_cast<const SearchExhausted *>(&e)) {
    doc["best_r"] = x->best_r;
    doc["best_residual"] = x->best_residual;
  } else if (const auto *k = dynamic_cast<const KrausError *>(&e)) {
    doc["residual"] = k->residual;
  }
  return doc;
}

int exit_code_for(const Error &e) {
  const std::string kind = e.kind();
  if (kind == "ParseError" || kind == "ConfigError" || kind == "DistributionError" ||
      kind == "BudgetError" || kind == "IoError") {
    return 1;
  }
  return 2;
}

void add_common(CLI::App *sub, Settings &s) {
  sub->add_option("--output", s.output, "Output path (stdout when omitted)");
  sub->add_option("--seed", s.seed, "Seed (falls back to TOMOCAST_SEED)");
  sub->add_option("--qmax", s.qmax, "Largest denominator for time ratios");
  sub->add_option("--rtol", s.rtol, "Relative tolerance for time ratios");
  sub->add_option("--tol", s.tol, "Phase tolerance for branch selection");
}

void add_prior(CLI::App *sub, Settings &s) {
  sub->add_option("--family", s.family, "Prior family")->required();
  sub->add_option("--a", s.a, "Width parameter a");
  sub->add_option("--m", s.m, "Support parameter m");
  sub->add_option("--weights", s.weights, "Custom pmf as k:w,k:w,...");
}

}  // namespace

std::vector<double> parse_time_grid(const std::string &spec) {
  if (spec.empty()) throw ConfigError("empty time grid");
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("time grid must be start:step:stop");
    const double start = parse_number(parts[0], "time grid");
    const double step = parse_number(parts[1], "time grid");
    const double stop = parse_number(parts[2], "time grid");
    if (!(step > 0.0)) throw ConfigError("time grid step must be positive");
    if (stop < start) throw ConfigError("time grid stop precedes start");
    const double span = (stop - start) / step;
    const auto n = static_cast<std::int64_t>(std::floor(span + 1e-9));
    if (n > 100'000'000) throw ConfigError("time grid has too many points");
    for (std::int64_t k = 0; k <= n; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, "time list"));
  if (out.empty()) throw ConfigError("empty time grid");
  return out;
}

std::vector<double> uniform_grid(std::size_t n, double t_max) {
  std::vector<double> out;
  if (n == 1) return {0.0};
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(k + 1 == n ? t_max : t_max * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Settings s;
  CLI::App app{"Prediction of closed-system dynamics from process tomography snapshots", "tomocast"};
  app.require_subcommand(1);

  CLI::App *validate = app.add_subcommand("validate", "Check that a tomography set is consistent");
  validate->add_option("--input", s.input, "Tomography set JSON")->required();
  add_common(validate, s);

  CLI::App *predict = app.add_subcommand("predict", "Apply the predicted map to an observable");
  predict->add_option("--input", s.input, "Tomography set JSON")->required();
  predict->add_option("--observable", s.observable, "Observable matrix JSON")->required();
  predict->add_option("--t", s.t_spec, "Evaluation time")->required();
  add_prior(predict, s);
  add_common(predict, s);

  CLI::App *traj = app.add_subcommand("trajectory", "Evolve a density matrix over a time grid");
  traj->add_option("--input", s.input, "Tomography set JSON")->required();
  traj->add_option("--state", s.state, "Initial density matrix JSON")->required();
  traj->add_option("--times", s.times_spec, "start:step:stop or comma list");
  traj->add_option("--t", s.t_spec, "Alias of --times");
  add_prior(traj, s);
  add_common(traj, s);

  CLI::App *charfun = app.add_subcommand("charfun", "Tabulate |phi(t)|^2 for a prior");
  add_prior(charfun, s);
  charfun->add_option("--grid", s.grid, "Number of grid points");
  charfun->add_option("--tmax", s.t_max, "Grid end point (default 2 pi)");
  charfun->add_option("--output", s.output, "Output path (stdout when omitted)");

  CLI::App *adversary = app.add_subcommand("adversary", "Search for a distant Hamiltonian fitting the data");
  adversary->add_option("--input", s.input, "Tomography set JSON")->required();
  adversary->add_option("--epsilon", s.epsilon, "Allowed propagator residual");
  adversary->add_option("--rmax", s.rmax, "Largest multiplier searched");
  adversary->add_option("--beta", s.beta, "Required distance from the minimal-norm Hamiltonian");
  add_common(adversary, s);

  CLI::App *dilate = app.add_subcommand("dilate", "Build a system-bath unitary from Kraus operators");
  dilate->add_option("--kraus", s.kraus, "Kraus set JSON");
  dilate->add_option("--input", s.input, "Alias of --kraus");
  dilate->add_option("--seed", s.seed, "Seed (falls back to TOMOCAST_SEED)");
  dilate->add_option("--output", s.output, "Output path (stdout when omitted)");

  CLI::App *demo = app.add_subcommand("demo", "Write |phi|^2 tables for all six prior families");
  demo->add_option("--output", s.output, "Output directory");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("tomocast");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (std::string &a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(s, out, err);
    if (predict->parsed()) return cmd_predict(s, out);
    if (traj->parsed()) return cmd_trajectory(s, out);
    if (charfun->parsed()) return cmd_charfun(s, out);
    if (adversary->parsed()) return cmd_adversary(s, out);
    if (dilate->parsed()) return cmd_dilate(s, out);
    if (demo->parsed()) return cmd_demo(s, out);
  } catch (const Error &e) {
    err << diagnostic(e).dump() << '\n';
    return exit_code_for(e);
  } catch (const std::exception &e) {
    json doc;
    doc["error"] = "InternalError";
    doc["message"] = e.what();
    err << doc.dump() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace tomocast::cli
