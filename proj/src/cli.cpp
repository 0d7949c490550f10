// Copyright 2026 The entwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entwit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <mutex>
#include <thread>

#include "entwit/io.hpp"

namespace entwit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "' in " + what);
  }
  if (pos != s.size()) throw UsageError("bad number '" + s + "' in " + what);
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || v < 0 || v > 1e9) throw UsageError("expected a nonnegative integer in " + what);
  return static_cast<int>(v);
}

Dims parse_dims(const std::string& s) {
  Dims dims;
  for (const auto& part : split(s, 'x')) {
    const int d = to_int(part, "dimensions '" + s + "'");
    if (d < 1) throw UsageError("dimensions must be positive in '" + s + "'");
    dims.push_back(d);
  }
  if (dims.empty()) throw UsageError("empty dimension list");
  return dims;
}

}  // namespace

DensityMatrix parse_state_source(const std::string& src) {
  const auto colon = src.find(':');
  const std::string name = src.substr(0, colon);
  const std::vector<std::string> args =
      colon == std::string::npos ? std::vector<std::string>{} : split(src.substr(colon + 1), ':');
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) throw UsageError("wrong number of parameters in state '" + src + "'");
  };

  if (name == "ghz" || name == "w") {
    need(0, 1);
    const int n = args.empty() ? 3 : to_int(args[0], src);
    return name == "ghz" ? ghz(n) : w_state(n);
  }
  if (name == "bell") {
    need(0, 0);
    return ghz(2);
  }
  if (name == "wghz") {
    need(1, 1);
    const double q = to_double(args[0], src);
    if (!(q >= 0.0 && q <= 1.0)) throw UsageError("wghz: q must lie in [0, 1]");
    return wghz_family(q);
  }
  if (name == "maxmixed") {
    need(1, 1);
    return DensityMatrix::maximally_mixed(parse_dims(args[0]));
  }
  if (name == "product") {
    need(1, 1);
    const Dims dims = parse_dims(args[0]);
    return DensityMatrix::from_pure(dims, basis_vector(dims, std::vector<int>(dims.size(), 0)));
  }
  if (name == "random") {
    need(1, 3);
    const Dims dims = parse_dims(args[0]);
    const int rank = args.size() > 1 ? to_int(args[1], src) : total_dim(dims);
    const std::uint64_t seed = args.size() > 2 ? static_cast<std::uint64_t>(to_int(args[2], src)) : 1;
    if (rank < 1) throw UsageError("random: rank must be positive");
    return random_density(dims, rank, seed);
  }
  if (name == "randompure") {
    need(1, 2);
    const Dims dims = parse_dims(args[0]);
    const std::uint64_t seed = args.size() > 1 ? static_cast<std::uint64_t>(to_int(args[1], src)) : 1;
    return random_pure(dims, seed);
  }
  if (!std::filesystem::exists(src)) throw UsageError("unknown state '" + src + "' (not a named state or a file)");
  return load_state(src);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("range grid must be start:stop:count");
    const double a = to_double(parts[0], "grid"), b = to_double(parts[1], "grid");
    const int n = to_int(parts[2], "grid");
    if (n < 1) throw UsageError("range grid needs a positive count");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  for (const auto& p : split(text, ',')) out.push_back(to_double(p, "grid"));
  return out;
}

namespace {

bool monotone(const std::vector<double>& g) {
  return std::is_sorted(g.begin(), g.end()) || std::is_sorted(g.rbegin(), g.rend());
}

struct Family {
  Matrix a, b;
  Dims dims;

  DensityMatrix at(double q) const { return DensityMatrix(dims, q * a + (1.0 - q) * b); }
};

Family load_family(const std::string& name) {
  if (name == "wghz") {
    const Vector w = w_vector(3), g = ghz_vector(3);
    return {w * w.adjoint(), g * g.adjoint(), Dims(3, 2)};
  }
  std::ifstream in(name);
  if (!in) throw UsageError("unknown family '" + name + "' (expected wghz or a JSON file)");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(name + ": " + e.what());
  }
  if (!j.contains("a") || !j.contains("b")) throw IoError(name + ": family file needs states 'a' and 'b'");
  DensityMatrix a = state_from_json(j["a"]), b = state_from_json(j["b"]);
  if (a.dims() != b.dims()) throw IoError(name + ": family endpoints have different dimensions");
  return {a.op(), b.op(), a.dims()};
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.grid.empty()) throw UsageError("sweep: the bound grid is empty");
  if (cfg.q_grid.empty()) throw UsageError("sweep: the q grid is empty");
  if (!monotone(cfg.grid) || !monotone(cfg.q_grid)) throw UsageError("sweep: grids must be monotone");
  for (double q : cfg.q_grid)
    if (!(q >= 0.0 && q <= 1.0)) throw UsageError("sweep: q values must lie in [0, 1]");
  for (double b : cfg.grid)
    if (!(b >= 0.0) || !std::isfinite(b)) throw UsageError("sweep: bounds must be finite and nonnegative");
  if (cfg.release != "lower" && cfg.release != "upper") throw UsageError("sweep: --release must be lower or upper");
  if (!(cfg.fixed >= 0.0)) throw UsageError("sweep: the fixed bound must be nonnegative");
  const Family fam = load_family(cfg.family);

  std::vector<SweepRow> rows;
  for (double b : cfg.grid)
    for (double q : cfg.q_grid) rows.push_back({b, q, {}});

  SolverConfig scfg;
  scfg.tol = cfg.tol;
  scfg.oracle.seed = cfg.seed;
  scfg.keep_history = false;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        SweepRow& r = rows[i];
        const DensityMatrix rho = fam.at(r.q);
        const double lower = cfg.release == "lower" ? r.bound : cfg.fixed;
        const double upper = cfg.release == "lower" ? cfg.fixed : r.bound;
        r.result = compute_e_mn(rho, cfg.k, lower, upper, scfg);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(rows.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "bound,q,value,gap,converged,iterations\n";
  for (const auto& r : rows)
    out << format_sig9(r.bound) << ',' << format_sig9(r.q) << ',' << format_sig9(r.result.value) << ','
        << format_sig9(r.result.gap) << ',' << (r.result.converged ? 1 : 0) << ',' << r.result.iterations << '\n';
  return out.str();
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"lemma1", "schmidt", "witness-form", "subspace"};
  return names;
}

namespace {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t i) { return seed * 1000003ULL + i; }

TheoremReport named(TheoremReport r, const std::string& label) {
  r.name += "[" + label + "]";
  return r;
}

std::vector<TheoremReport> suite_lemma1(std::uint64_t seed) {
  std::vector<TheoremReport> out;
  SolverConfig cfg;
  cfg.oracle.seed = seed;
  const Dims two{2, 2}, three{2, 2, 2};
  out.push_back(named(lemma1_check(DensityMatrix::maximally_mixed(two), 1, cfg), "maxmixed:2x2"));
  out.push_back(named(lemma1_check(ghz(2), 1, cfg), "bell"));
  for (int k = 1; k <= 2; ++k) {
    out.push_back(named(lemma1_check(ghz(3), k, cfg), "ghz:3,k=" + std::to_string(k)));
    out.push_back(named(lemma1_check(w_state(3), k, cfg), "w:3,k=" + std::to_string(k)));
  }
  for (int i = 0; i < 10; ++i) {
    const int rank = 1 + i % 4;
    out.push_back(named(lemma1_check(random_density(two, rank, sub_seed(seed, i)), 1, cfg),
                        "random:2x2:" + std::to_string(rank) + ":" + std::to_string(i)));
  }
  for (int i = 0; i < 2; ++i)
    for (int k = 1; k <= 2; ++k)
      out.push_back(named(lemma1_check(random_density(three, 2, sub_seed(seed, 100 + i)), k, cfg),
                          "random:2x2x2:2:" + std::to_string(i) + ",k=" + std::to_string(k)));
  return out;
}

std::vector<TheoremReport> suite_schmidt(std::uint64_t seed) {
  std::vector<TheoremReport> out;
  const Partition cut = Partition::parse("1|2");
  for (int d : {2, 3}) {
    const Dims dims{d, d};
    for (int i = 0; i < 20; ++i) {
      const Vector psi = random_pure_vector(dims, sub_seed(seed, 2 * i));
      const Vector phi = random_pure_vector(dims, sub_seed(seed, 2 * i + 1));
      out.push_back(named(schmidt_rank_deficient_combo(psi, phi, dims, cut).report,
                          std::to_string(d) + "x" + std::to_string(d) + "#" + std::to_string(i)));
    }
  }
  return out;
}

std::vector<TheoremReport> suite_witness_form(std::uint64_t seed) {
  std::vector<TheoremReport> out;
  SolverConfig cfg;
  cfg.oracle.seed = seed;
  auto run = [&](const DensityMatrix& rho, const std::string& label, bool use_bsa, double tol) {
    const MeasureResult r = use_bsa ? bsa(rho, 1, cfg) : robustness(rho, 1, cfg);
    out.push_back(named(witness_support_form_check(rho, r, tol), label));
  };
  run(ghz(2), "bell,robustness", false, 1e-3);
  run(ghz(2), "bell,bsa", true, 1e-3);
  run(ghz(3), "ghz:3,bsa", true, 1e-3);
  run(w_state(3), "w:3,bsa", true, 1e-3);
  run(wghz_family(0.5), "wghz:0.5,bsa", true, 1e-2);
  run(random_density({2, 2}, 3, sub_seed(seed, 0)), "random:2x2:3,robustness", false, 1e-3);
  return out;
}

std::vector<TheoremReport> suite_subspace(std::uint64_t seed) {
  std::vector<TheoremReport> out;
  SolverConfig cfg;
  cfg.oracle.seed = seed;
  const DensityMatrix rho = wghz_family(0.5);
  out.push_back(named(
      subspace_entanglement_scan(rho, ScanMeasure::indicator, 1, 50, seed, ScanExpectation::all_maximal, cfg).report,
      "wghz:0.5"));
  out.push_back(named(
      subspace_entanglement_scan(rho, ScanMeasure::robustness, 1, 12, seed, ScanExpectation::not_all_maximal, cfg)
          .report,
      "wghz:0.5"));
  return out;
}

}  // namespace

std::vector<TheoremReport> run_verify_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "lemma1") return suite_lemma1(seed);
  if (suite == "schmidt") return suite_schmidt(seed);
  if (suite == "witness-form") return suite_witness_form(seed);
  if (suite == "subspace") return suite_subspace(seed);
  if (suite == "all") {
    std::vector<TheoremReport> all;
    for (const auto& s : verify_suites()) {
      auto part = run_verify_suite(s, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw UsageError("unknown verify suite '" + suite + "'");
}

namespace {

std::string fmt_bound(double b) { return std::isfinite(b) ? format_sig9(b) : "inf"; }

int default_jobs() {
  if (const char* env = std::getenv("ENTWIT_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

void print_measure(const MeasureResult& r, std::ostream& out) {
  out << "measure:    " << r.measure << " (k=" << r.k << ", lower=" << fmt_bound(r.lower)
      << ", upper=" << fmt_bound(r.upper) << ")\n"
      << std::fixed << std::setprecision(6) << "value:      " << r.value << '\n'
      << std::scientific << std::setprecision(2) << "gap:        " << r.gap << '\n'
      << std::defaultfloat << "converged:  " << (r.converged ? "yes" : "no (heuristic)") << '\n'
      << "iterations: " << r.iterations << "  cuts: " << r.cuts << '\n';
}

void print_reports(const std::vector<TheoremReport>& reps, std::ostream& out) {
  std::size_t width = 4;
  for (const auto& r : reps) width = std::max(width, r.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "check" << "  result  worst residual\n";
  for (const auto& r : reps) {
    const Residual* worst = nullptr;
    for (const auto& x : r.residuals)
      if (!worst || x.value - x.threshold > worst->value - worst->threshold) worst = &x;
    out << std::left << std::setw(static_cast<int>(width)) << r.name << "  "
        << (r.has_verdict ? (r.pass ? "PASS  " : "FAIL  ") : "report") << "  ";
    if (worst) out << worst->name << "=" << format_sig9(worst->value) << " (<= " << format_sig9(worst->threshold) << ")";
    out << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"entwit: witnessed entanglement measures"};
  app.require_subcommand(1);

  // measure
  auto* measure = app.add_subcommand("measure", "Evaluate one entanglement measure");
  std::string state_src, measure_name = "robustness", witness_out;
  int k = 1;
  double lower = kUnbounded, upper = kUnbounded, tol = 1e-6;
  std::uint64_t seed = 1;
  bool as_json = false;
  measure->add_option("--state", state_src, "ghz:N, w:N, wghz:q, maxmixed:2x2, random:2x2[:rank[:seed]] or a JSON file")
      ->required();
  measure->add_option("--measure", measure_name, "robustness, bsa or emn")
      ->check(CLI::IsMember({"robustness", "bsa", "emn"}));
  measure->add_option("--k", k, "largest block size of the separable partitions");
  measure->add_option("--lower", lower, "lower box bound m (emn)");
  measure->add_option("--upper", upper, "upper box bound n (emn)");
  measure->add_option("--tol", tol, "solver tolerance");
  measure->add_option("--seed", seed, "oracle seed");
  measure->add_flag("--json", as_json, "print the result as JSON");
  measure->add_option("--witness-out", witness_out, "write the witness matrix as JSON");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Grid of E_{m:n} values over a one-parameter family");
  SweepConfig sc;
  sc.jobs = default_jobs();
  std::string grid_text, q_text = "0:1:5", csv_out;
  sweep->add_option("--family", sc.family, "wghz or a JSON file with states a, b (q a + (1-q) b)");
  sweep->add_option("--grid,--n-grid,--m-grid", grid_text, "released-bound values: a,b,c or start:stop:count")
      ->required();
  sweep->add_option("--q-grid", q_text, "q values");
  sweep->add_option("--release", sc.release, "box side moved by the grid (lower or upper)");
  sweep->add_option("--fixed", sc.fixed, "value of the other box side");
  sweep->add_option("--k", sc.k);
  sweep->add_option("--tol", sc.tol);
  sweep->add_option("--seed", sc.seed);
  sweep->add_option("--jobs", sc.jobs, "concurrent grid points (default: $ENTWIT_JOBS or 1)");
  sweep->add_option("--out", csv_out, "CSV path (stdout when omitted)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a batch of theorem checks");
  std::string suite;
  std::uint64_t vseed = 1;
  bool verify_json = false;
  verify->add_option("suite", suite, "lemma1, schmidt, witness-form, subspace or all")->required();
  verify->add_option("--seed", vseed);
  verify->add_flag("--json", verify_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*measure) {
      const DensityMatrix rho = parse_state_source(state_src);
      if (measure_name == "robustness") {
        lower = kUnbounded;
        upper = 1.0;
      } else if (measure_name == "bsa") {
        lower = 1.0;
        upper = kUnbounded;
      } else if (std::isinf(lower) && std::isinf(upper)) {
        throw UsageError("emn needs --lower and/or --upper");
      }
      SolverConfig cfg;
      cfg.tol = tol;
      cfg.oracle.seed = seed;
      const MeasureResult r = compute_e_mn(rho, k, lower, upper, cfg);
      if (as_json)
        out << measure_result_to_json(r).dump(2) << '\n';
      else
        print_measure(r, out);
      if (!witness_out.empty()) {
        std::ofstream w(witness_out);
        if (!w) throw IoError("cannot write " + witness_out);
        w << matrix_to_json(r.witness.op).dump() << '\n';
      }
      return r.converged ? 0 : 2;
    }
    if (*sweep) {
      sc.grid = parse_grid(grid_text);
      sc.q_grid = parse_grid(q_text);
      std::ofstream file;
      if (!csv_out.empty()) {
        file.open(csv_out);
        if (!file) throw IoError("cannot write " + csv_out);
      }
      const auto rows = run_sweep(sc);
      (csv_out.empty() ? out : file) << sweep_csv(rows);
      const bool all_conv = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.result.converged; });
      return all_conv ? 0 : 2;
    }
    if (*verify) {
      const auto reps = run_verify_suite(suite, vseed);
      if (verify_json) {
        json arr = json::array();
        for (const auto& r : reps) arr.push_back(report_to_json(r));
        out << arr.dump(2) << '\n';
      } else {
        print_reports(reps, out);
      }
      const bool ok = std::all_of(reps.begin(), reps.end(), [](const TheoremReport& r) { return !r.has_verdict || r.pass; });
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "entwit: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace entwit
