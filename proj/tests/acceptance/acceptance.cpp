// Acceptance criteria C1..C10. Usage: bdglab_acceptance <C1..C10|all>.
// Prints one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "bdglab/gauge_analysis.hpp"
#include "bdglab/integrator.hpp"
#include "bdglab/lab.hpp"
#include "bdglab/orlicz_space.hpp"
#include "bdglab/paths.hpp"
#include "bdglab/random.hpp"
#include "bdglab/stats.hpp"
#include "cli/experiments.hpp"
#include "cli/suite.hpp"
#include "support/oracles.hpp"

namespace {

using namespace bdglab;
namespace fs = std::filesystem;

// Collects failures; a criterion passes when none were recorded.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

std::map<std::string, std::string> params_of(const RatioReport& r) {
  std::map<std::string, std::string> out;
  std::stringstream ss(r.params);
  for (std::string kv; std::getline(ss, kv, ';');) {
    const auto eq = kv.find('=');
    if (eq != std::string::npos) out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

// Rows of every suite config of the given kind (optionally filtered).
std::vector<RatioReport> suite_rows(const std::string& kind,
                                    const std::function<bool(const cli::ExperimentConfig&)>& keep = {}) {
  std::vector<RatioReport> rows;
  for (const auto& c : cli::full_suite()) {
    if (c.experiment != kind || (keep && !keep(c))) continue;
    auto r = cli::run_experiment(c);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

void require_all_pass(Check& ck, const std::vector<RatioReport>& rows) {
  ck.require(!rows.empty(), "no rows produced");
  for (const auto& r : rows) ck.require(r.pass, "row failed: " + r.params + " ratio=" + fmt(r.ratio));
}

// ---- C1 ------------------------------------------------------------------

Check c1() {
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  require_all_pass(ck, suite_rows("gauge_oracles"));

  const auto space = std::make_shared<const DiscreteMeasureSpace>(std::vector<double>{1.0, 1.0, 2.0, 0.5});
  double worst = 0.0;
  const auto track = [&](double err, const std::string& what) {
    worst = std::max(worst, err);
    ck.require(err <= 1e-4, what + " rel err " + fmt(err));
  };
  constexpr auto numeric = TransformRoute::numeric;
  for (double p : {1.5, 2.0, 3.0}) {
    const auto g = power_gauge(p);
    const double q = oracle::conjugate_exponent(p);
    const std::string tag = " p=" + fmt(p);
    for (double s : {0.03, 0.2, 0.9, 1.7, 12.0}) track(rel(phi_of(g, s, numeric), std::pow(s, p)), "phi" + tag);
    for (double t : {0.03, 0.5, 2.0, 40.0}) {
      const auto inv = inverse_transforms(g, t, numeric);
      track(rel(inv.psi, std::pow(t, 1.0 / p)), "psi" + tag);
      track(rel(inv.varphi, std::pow(t, 1.0 / p)), "varphi" + tag);
    }
    // Complementary of t^p is sup_s (st - s^p); the t^q/q form belongs to t^p/p.
    const auto comp = complementary_gauge(g, numeric);
    const auto comp_p = complementary_gauge(power_gauge(p, 1.0 / p), numeric);
    for (double t : {0.05, 0.3, 1.0, 2.0, 7.0}) {
      track(rel(comp(t), oracle::power_complementary(p, t)), "complementary" + tag);
      track(rel(comp_p(t), std::pow(t, q) / q), "complementary of t^p/p" + tag);
    }
    const auto cls = classify_gauge(g);
    ck.require(cls.kappa_integral.has_value(), "kappa missing" + tag);
    if (cls.kappa_integral) track(rel(*cls.kappa_integral, 1.0 / (p - 1.0)), "kappa" + tag);
    for (std::uint64_t k = 0; k < 64; ++k) {
      const auto f = random_orlicz_vector(space, 3, 2024, k, -2.0, 2.0);
      const auto n = f.norms();
      track(rel(luxemburg_norm(f, g), oracle::weighted_lp(n, space->weights(), p)), "luxemburg" + tag);
    }
  }
  const double secs = seconds_since(t0);
  ck.require(secs < 10.0, "runtime " + fmt(secs) + " s >= 10 s");
  ck.detail = "worst rel err " + fmt(worst) + ", " + fmt(secs) + " s";
  return ck;
}

// ---- C2 ------------------------------------------------------------------

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

Check c2() {
  Check ck;
  require_all_pass(ck, suite_rows("young"));
  const auto grid = log_grid(1e-2, 1e2, 32);
  double min_gap = INFINITY;
  int gauges = 0;
  for (const auto& ng : gauge_registry()) {
    const auto g = make_gauge(ng.spec);
    if (!probe_n_function(g).ok()) continue;
    ++gauges;
    const auto comp = complementary_gauge(g);
    // The complementary must be the Legendre transform, or the gap is vacuous.
    for (double t : {0.1, 1.0, 10.0}) {
      const double ref = oracle::legendre([&](double s) { return g(s); }, t);
      ck.require(std::abs(comp(t) - ref) <= 1e-6 * std::max(1.0, ref), ng.name + " complementary != Legendre");
    }
    for (double s : grid) {
      for (double t : grid) {
        const double gap = young_gap(g, comp, s, t);
        min_gap = std::min(min_gap, gap);
        ck.require(gap >= -1e-9, ng.name + " gap " + fmt(gap));
      }
    }
  }
  ck.require(gauges >= 3, "too few registry N-functions");
  auto half = power_spec(2.0);
  half.scale = 0.5;
  const auto g = make_gauge(half);
  const auto comp = complementary_gauge(g, TransformRoute::numeric);
  double worst_eq = 0.0;
  for (double s : grid) worst_eq = std::max(worst_eq, std::abs(young_gap(g, comp, s, g.right_derivative(s))));
  ck.require(worst_eq <= 1e-6, "equality defect " + fmt(worst_eq));
  ck.detail = std::to_string(gauges) + " N-functions, min gap " + fmt(min_gap) + ", equality defect " + fmt(worst_eq);
  return ck;
}

// ---- C3 ------------------------------------------------------------------

Check c3() {
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  const PathGrid grid(1.0, 4096);
  const std::uint64_t key = derive_key(12345, "acceptance_brownian");
  constexpr std::size_t reps = 100000;
  ScalarMoments terminal, terminal_sq, maxima, qv;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto b = simulate_bundle(key, r, 1, grid);
    const auto path = b.path(0);
    double mx = 0.0, q = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) {
      mx = std::max(mx, path[k]);
      q += (path[k] - path[k - 1]) * (path[k] - path[k - 1]);
    }
    terminal.add(path.back());
    terminal_sq.add(path.back() * path.back());
    maxima.add(mx);
    qv.add(q);
  }
  const auto within = [&](const ScalarMoments& m, double expected, double allowance, const std::string& what) {
    const auto e = m.estimate();
    const double dev = std::abs(e.mean - expected);
    ck.require(dev <= 3.0 * e.std_error + allowance, what + " = " + fmt(e.mean) + " (3se " + fmt(3 * e.std_error) + ")");
    return fmt(dev / (3.0 * e.std_error + allowance));
  };
  std::string d = "mean " + within(terminal, 0.0, 0.0, "mean(B_1)");
  d += ", var " + within(terminal_sq, 1.0, 0.0, "var(B_1)");
  d += ", max " + within(maxima, std::sqrt(2.0 / std::numbers::pi), 0.02, "E max B");
  d += ", QV " + within(qv, 1.0, 0.0, "QV(1)");
  require_all_pass(ck, suite_rows("brownian_engine"));
  const double secs = seconds_since(t0);
  ck.require(secs < 120.0, "runtime " + fmt(secs) + " s >= 120 s");
  ck.detail = "deviation/allowance: " + d + "; " + fmt(secs) + " s";
  return ck;
}

// ---- C4 ------------------------------------------------------------------

Check c4() {
  Check ck;
  const auto rows = suite_rows("ito_isometry");
  require_all_pass(ck, rows);
  std::set<std::string> seen;
  std::set<std::string> resolutions;
  for (const auto& r : rows) {
    auto p = params_of(r);
    seen.insert(p["integrand"] + "/" + p["stop"] + "/" + p["n"] + "/" + p["side"]);
    resolutions.insert(p["n"]);
    ck.require(r.lhs.n >= 100000, "replicates " + std::to_string(r.lhs.n));
  }
  ck.require(resolutions.size() == 2, "expected two resolutions");
  for (const char* integrand : {"constant_e1", "sign_of_B1", "two_coord_mix"}) {
    for (const char* stop : {"deterministic", "capped_exit", "tau_R"}) {
      for (const auto& n : resolutions) {
        for (const char* side : {"upper", "lower"}) {
          ck.require(seen.count(std::string(integrand) + "/" + stop + "/" + n + "/" + side),
                     std::string("missing ") + integrand + "/" + stop + "/n=" + n);
        }
      }
    }
  }
  ck.detail = std::to_string(rows.size()) + " rows, 3 integrands x 3 stopping times x 2 resolutions";
  return ck;
}

// ---- C5 ------------------------------------------------------------------

Check c5() {
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = suite_rows("good_lambda");
  const double secs = seconds_since(t0);
  require_all_pass(ck, rows);
  ck.require(rows.size() == 2u * 3u * 3u * 8u * 2u, "row count " + std::to_string(rows.size()));
  std::set<std::string> ns;
  for (const auto& r : rows) {
    auto p = params_of(r);
    const double beta = std::stod(p["beta"]);
    const double delta = std::stod(p["delta"]);
    const double expect = p["line"] == "1" ? delta * delta / ((beta - 1) * (beta - 1))
                                           : delta * delta / (beta * beta - 1);
    ck.require(r.bound && std::abs(*r.bound - expect) <= 1e-12 * expect, "bound mismatch " + r.params);
    ck.require(p["a"] == "1" && p["T"] == "4", "stopping parameters " + r.params);
    ck.require(r.lhs.n >= 100000, "replicates");
    ns.insert(p["n"]);
  }
  ck.require(ns.size() == 2, "expected n and 4n");
  ck.require(secs < 300.0, "runtime " + fmt(secs) + " s >= 300 s");
  ck.detail = std::to_string(rows.size()) + " rows; " + fmt(secs) + " s";
  return ck;
}

// ---- C6 ------------------------------------------------------------------

Check c6() {
  Check ck;
  const auto rows = suite_rows("bdg_ratio");
  require_all_pass(ck, rows);
  std::map<std::string, double> forward;
  double lo = INFINITY, hi = 0.0;
  std::set<std::string> martingales;
  for (const auto& r : rows) {
    auto p = params_of(r);
    martingales.insert(p["martingale"]);
    if (p["dir"] == "forward") {
      const double s = r.ratio_stderr;
      ck.require(r.ratio >= 1.0 - 3.0 * s && r.ratio <= 4.0 + 3.0 * s, "ratio " + fmt(r.ratio) + " " + r.params);
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
      forward[p["martingale"] + "/" + p["n"] + "/" + p["c"]] = r.ratio;
    } else if (p["dir"] == "homogeneity") {
      ck.require(r.lhs.mean == 0.0, "scaling changed the ratio: " + r.params);
    }
  }
  ck.require(martingales.count("B") && martingales.count("sign_of_B1"), "missing martingale");
  for (const auto& [k, v] : forward) {
    if (k.size() > 2 && k.substr(k.size() - 2) == "/1") {
      const auto twice = forward.find(k.substr(0, k.size() - 1) + "2");
      ck.require(twice != forward.end() && twice->second == v, "M -> 2M not exact for " + k);
    }
  }
  ck.detail = "forward ratios in [" + fmt(lo) + ", " + fmt(hi) + "]";
  return ck;
}

// ---- C7 ------------------------------------------------------------------

Check c7() {
  Check ck;
  const auto rows = suite_rows("doob_orlicz");
  require_all_pass(ck, rows);
  bool pointwise = false;
  std::map<std::string, std::map<std::size_t, RatioReport>> conclusion;  // gauge -> n -> row
  for (const auto& r : rows) {
    auto p = params_of(r);
    if (p["check"] == "pointwise" && p["pair"] == "dominated") {
      pointwise = true;
      ck.require(r.lhs.mean == 0.0 && r.pass, "dominated pair violates the hypothesis pointwise");
    }
    if (p["check"] == "conclusion" && p["pair"] == "doob") conclusion[p["gauge"]][std::stoul(p["n"])] = r;
  }
  ck.require(pointwise, "no pointwise audit row");
  std::string d;
  for (const auto& [gauge, by_n] : conclusion) {
    for (const auto& [n, r] : by_n) {
      (void)n;
      ck.require(std::isfinite(r.ratio), gauge + " ratio not finite");
      if (gauge == "power(p=2)") {
        ck.require(r.ratio <= 4.0 + 3.0 * r.ratio_stderr, "t^2 doob ratio " + fmt(r.ratio));
      }
    }
    ck.require(by_n.size() == 2, gauge + ": expected two resolutions");
    if (by_n.size() == 2) {
      const double a = by_n.begin()->second.ratio;
      const double b = std::next(by_n.begin())->second.ratio;
      const double drift = std::abs(a - b) / std::min(a, b);
      if (gauge != "power(p=2)") ck.require(drift <= 0.10, gauge + " refinement drift " + fmt(drift));
      d += gauge + " " + fmt(a) + "/" + fmt(b) + " ";
    }
  }
  ck.require(conclusion.count("power(p=2)") && conclusion.count("lambda_alpha(alpha=2)"), "missing doob gauge");
  ck.detail = "doob ratios (n/4n): " + d;
  return ck;
}

// ---- C8 ------------------------------------------------------------------

Check c8() {
  Check ck;
  const auto rows = suite_rows("orlicz_bdg");
  require_all_pass(ck, rows);
  // (gauge, integrand, dir, n) -> ratios over the sweep; (.., T, c) -> ratio per n.
  std::map<std::string, std::vector<double>> sweep;
  std::map<std::string, std::map<std::string, double>> refine;
  bool lp_row = false;
  for (const auto& r : rows) {
    auto p = params_of(r);
    if (p.count("check")) {
      if (p["check"] == "lp_reduction") {
        lp_row = true;
        ck.require(r.lhs.mean <= 1e-6, "Luxemburg vs modular^(1/p) " + fmt(r.lhs.mean));
      }
      continue;
    }
    const std::string base = p["gauge"] + "/" + p["integrand"] + "/" + p["dir"];
    sweep[base + "/" + p["n"]].push_back(r.ratio);
    refine[base + "/" + p["T"] + "/" + p["c"]][p["n"]] = r.ratio;
  }
  ck.require(lp_row, "no L^p reduction row");
  double worst_sweep = 0.0, worst_drift = 0.0;
  std::set<std::string> combos;
  for (const auto& [k, v] : sweep) {
    ck.require(v.size() == 9, k + ": expected a 3 x 3 sweep");
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double spread = *mx / *mn;
    worst_sweep = std::max(worst_sweep, spread);
    ck.require(spread < 10.0, k + " sweep max/min " + fmt(spread));
    combos.insert(k.substr(0, k.rfind('/')));
  }
  for (const auto& [k, by_n] : refine) {
    ck.require(by_n.size() == 2, k + ": expected n and 4n");
    if (by_n.size() != 2) continue;
    const double a = by_n.begin()->second, b = std::next(by_n.begin())->second;
    const double drift = std::abs(a - b) / std::min(a, b);
    worst_drift = std::max(worst_drift, drift);
    ck.require(drift <= 0.15, k + " refinement drift " + fmt(drift));
  }
  for (const char* g : {"power(p=2)", "lambda_alpha(alpha=2)"}) {
    for (const char* i : {"two_coord_mix", "B1_times_e1"}) {
      for (const char* dir : {"forward", "reverse"}) {
        ck.require(combos.count(std::string(g) + "/" + i + "/" + dir), std::string("missing ") + g + "/" + i + "/" + dir);
      }
    }
  }
  ck.detail = "worst sweep max/min " + fmt(worst_sweep) + ", worst refinement drift " + fmt(worst_drift);
  return ck;
}

// ---- C9 ------------------------------------------------------------------

Check c9() {
  Check ck;
  require_all_pass(ck, suite_rows("jm_convergence"));
  const PathGrid grid(1.0, 4096);
  const auto sample = [&](const std::function<double(double)>& f) {
    std::vector<double> v(grid.steps());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid.time(k));
    return v;
  };
  const auto err = [&](const std::vector<double>& f, std::size_t m) {
    return l2_time_distance(f, coarsen_Jm(f, 1, m, grid), 1, grid);
  };
  const auto one = sample([](double) { return 1.0; });
  for (std::size_t m : {4u, 8u, 16u}) {
    const double e = err(one, m);
    ck.require(e == std::sqrt(1.0 / static_cast<double>(m)), "f=1, m=" + std::to_string(m) + ": " + fmt(e));
  }
  std::string d;
  for (const auto& [name, f] : std::vector<std::pair<std::string, std::function<double(double)>>>{
           {"t", [](double t) { return t; }}, {"sin t", [](double t) { return std::sin(t); }}}) {
    const auto v = sample(f);
    const double e8 = err(v, 8), e16 = err(v, 16);
    ck.require(e16 < e8, name + ": m=16 error " + fmt(e16) + " not below m=8 " + fmt(e8));
    d += name + " " + fmt(e8) + " -> " + fmt(e16) + "; ";
  }
  // Prefix domination: dt sum_{i<k} |J^m f|^2 <= dt sum_{i<k} |f|^2 for every k.
  const PathGrid g256(1.0, 256);
  const DiscreteMeasureSpace space(std::vector<double>{1.0, 1.0, 2.0, 0.5});
  std::size_t checks = 0;
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const auto b = simulate_bundle(12345, "acceptance_jm", rep, 2, g256);
    for (const auto& name : suite_integrand_names()) {
      const auto x = realize(suite_integrand(name, 1.0), b, space);
      for (std::size_t m : {4u, 8u, 16u}) {
        const auto j = coarsen_Jm(x, m);
        for (std::size_t a = 0; a < space.size(); ++a) {
          const auto pf = prefix_energy(x.atom_path(a), 2, g256);
          const auto pj = prefix_energy(j.atom_path(a), 2, g256);
          for (std::size_t k = 0; k < pf.size(); ++k, ++checks) {
            if (pj[k] > pf[k]) ck.require(false, name + " prefix domination fails at k=" + std::to_string(k));
          }
        }
      }
    }
  }
  ck.detail = d + std::to_string(checks) + " prefix comparisons";
  return ck;
}

// ---- C10 -----------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check c10() {
  Check ck;
  const fs::path work = fs::temp_directory_path() / ("bdglab_c10_" + std::to_string(::getpid()));
  fs::remove_all(work);
  std::vector<int> status;
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string("\"") + BDGLAB_TOOL_PATH + "\" verify-paper --fast --seed 12345 --out \"" +
                            (work / run).string() + "\" > /dev/null 2>&1";
    status.push_back(std::system(cmd.c_str()));
  }
  const auto a = slurp(work / "a" / "verify_paper.csv");
  const auto b = slurp(work / "b" / "verify_paper.csv");
  ck.require(!a.empty(), "first run wrote no CSV (status " + std::to_string(status[0]) + ")");
  ck.require(a == b, "CSV bytes differ between runs");
  ck.require(slurp(work / "a" / "verify_paper_summary.txt") == slurp(work / "b" / "verify_paper_summary.txt"),
             "summaries differ");
  const auto lines = std::count(a.begin(), a.end(), '\n');
  ck.detail = std::to_string(a.size()) + " identical bytes, " + std::to_string(lines - 1) + " rows";
  fs::remove_all(work);
  return ck;
}

struct Criterion {
  std::string id;
  std::string title;
  Check (*run)();
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {"C1", "power-gauge oracle suite", c1},
      {"C2", "Young inequality and equality case", c2},
      {"C3", "Brownian engine moments", c3},
      {"C4", "Ito isometry at stopping times", c4},
      {"C5", "good-lambda inequalities", c5},
      {"C6", "scalar BDG ratio and scaling invariance", c6},
      {"C7", "Doob-Orlicz maximal inequality", c7},
      {"C8", "Orlicz-valued BDG", c8},
      {"C9", "J^m convergence and prefix domination", c9},
      {"C10", "verify-paper determinism", c10},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string want = argc > 1 ? argv[1] : "all";
  bool all_ok = true;
  bool matched = false;
  for (const auto& c : criteria()) {
    if (want != "all" && want != c.id) continue;
    matched = true;
    Check ck;
    try {
      ck = c.run();
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = ck.failures.empty();
    all_ok = all_ok && ok;
    std::printf("%-3s [PRIMARY] %s: %s (%s)\n", c.id.c_str(), ok ? "PASS" : "FAIL", c.title.c_str(),
                ck.detail.c_str());
    for (std::size_t i = 0; i < ck.failures.size() && i < 20; ++i) std::printf("    - %s\n", ck.failures[i].c_str());
    std::fflush(stdout);
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", want.c_str());
    return 2;
  }
  return all_ok ? 0 : 1;
}
