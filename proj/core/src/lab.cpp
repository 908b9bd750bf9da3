#include "bdglab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bdglab/errors.hpp"
#include "bdglab/gauge_analysis.hpp"
#include "bdglab/integrator.hpp"
#include "bdglab/monte_carlo.hpp"
#include "bdglab/random.hpp"

namespace bdglab {

namespace {

// Paired accumulators plus a running max and a violation counter.
struct Bank {
  std::vector<PairMoments> m;
  double max_value = 0.0;
  std::size_t violations = 0;

  explicit Bank(std::size_t size = 0) : m(size) {}
  void merge(const Bank& o) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i].merge(o.m[i]);
    max_value = std::max(max_value, o.max_value);
    violations += o.violations;
  }
};

std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ';';
    out += p;
  }
  return out;
}

std::string grid_param(std::size_t n) { return "n=" + std::to_string(n); }

// Coarse first, then the simulated resolution.
std::vector<BrownianBundle> resolutions(const BrownianBundle& fine, std::size_t refine) {
  if (refine <= 1) return {fine};
  return {fine.coarsen(refine), fine};
}

std::vector<std::size_t> resolution_steps(const GridPlan& g) {
  if (g.refine <= 1) return {g.n};
  return {g.n, g.n * g.refine};
}

PathGrid fine_grid(const GridPlan& g) {
  if (g.n == 0 || g.refine == 0 || !(g.horizon > 0.0)) throw std::invalid_argument("grid plan must be positive");
  return {g.horizon, g.n * g.refine};
}

void check_mc(const McConfig& mc) {
  if (mc.replicates < 2) throw std::invalid_argument("at least two replicates are required");
}

std::size_t spec_dimension(const ProcessSpec& spec) {
  std::size_t d = 1;
  for (std::size_t j : spec.support) d = std::max(d, j + 1);
  return d;
}

bool is_linear(const GaugeSpec& s) { return s.family == GaugeFamily::power && s.p == 1.0 && s.scale == 1.0; }

// A scalar martingale and its predictable bracket on grid points 0..n.
struct ScalarPath {
  std::vector<double> m;
  std::vector<double> eta;
};

class ScalarMartingale {
 public:
  ScalarMartingale(const std::string& name, double horizon, std::size_t blocks)
      : name_(name), space_(std::vector<double>{1.0}) {
    if (name != "B") spec_ = suite_integrand(name, horizon, blocks);
  }
  std::size_t dimension() const { return spec_ ? spec_dimension(*spec_) : 1; }
  std::optional<double> bound() const { return spec_ ? spec_->bound : std::optional<double>(1.0); }

  ScalarPath sample(const BrownianBundle& b) const {
    const std::size_t n = b.grid().steps();
    ScalarPath out;
    if (!spec_) {
      const auto p = b.path(0);
      out.m.assign(p.begin(), p.end());
      out.eta.resize(n + 1);
      for (std::size_t k = 0; k <= n; ++k) out.eta[k] = b.grid().time(k);
      return out;
    }
    const IntegralProcess ip = ito_integral(*spec_, b, space_);
    out.m.assign(ip.integral.begin(), ip.integral.end());
    out.eta.assign(ip.eta.begin(), ip.eta.end());
    return out;
  }

 private:
  std::string name_;
  DiscreteMeasureSpace space_;
  std::optional<ProcessSpec> spec_;
};

std::vector<double> abs_path(std::span<const double> p) {
  std::vector<double> out(p.size());
  std::transform(p.begin(), p.end(), out.begin(), [](double x) { return std::abs(x); });
  return out;
}

std::size_t stop_index(const StoppingTimeSpec& stop, std::span<const double> observed, const PathGrid& grid) {
  if (stop.kind == StoppingTimeSpec::Kind::norm_threshold || stop.kind == StoppingTimeSpec::Kind::first_exceed) {
    throw std::invalid_argument("stopping rule '" + std::string(to_string(stop.kind)) +
                                "' is not supported by this experiment");
  }
  return resolve_stopping_time(stop, observed, grid);
}

RatioReport withheld(const std::string& experiment, const std::string& params, const std::string& anchor) {
  RatioReport r;
  r.experiment = experiment;
  r.params = params;
  r.anchor = anchor + " (withheld: hypothesis audit failed)";
  r.degenerate = false;
  r.ratio = std::numeric_limits<double>::quiet_NaN();
  r.pass = false;
  return r;
}

struct RatioRange {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  void add(double r) {
    if (!std::isfinite(r)) return;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
};

}  // namespace

std::string param(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return key + "=" + buf;
}

std::string param(const std::string& key, const std::string& value) { return key + "=" + value; }

// ---- quasi-metrics -------------------------------------------------------

QuasiMetric QuasiMetric::absolute() { return {QuasiMetricKind::absolute, 1.0, std::nullopt}; }

QuasiMetric QuasiMetric::modular(const GrowthFunction& gauge) {
  return {QuasiMetricKind::modular, phi_of(gauge, 2.0), gauge};
}

double QuasiMetric::operator()(double x, double y) const {
  if (kind_ != QuasiMetricKind::absolute) throw std::invalid_argument("modular quasi-metric needs Orlicz vectors");
  return std::abs(x - y);
}

double QuasiMetric::operator()(const OrliczVector& f, const OrliczVector& g) const {
  if (kind_ != QuasiMetricKind::modular) throw std::invalid_argument("absolute quasi-metric needs reals");
  // Norms of f - g computed symmetrically so that rho(f, g) == rho(g, f).
  if (!(f.space() == g.space()) || f.d() != g.d()) throw std::invalid_argument("quasi-metric: shape mismatch");
  std::vector<double> norms(f.atom_count());
  for (std::size_t i = 0; i < norms.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.d(); ++j) {
      const double diff = std::abs(f.value(i, j) - g.value(i, j));
      s += diff * diff;
    }
    norms[i] = std::sqrt(s);
  }
  return modular_of_norms(norms, f.space().weights(), *gauge_);
}

QuasiMetricAudit audit_quasi_metric(const QuasiMetric& rho, std::shared_ptr<const DiscreteMeasureSpace> space,
                                    std::size_t triples, std::uint64_t seed, std::size_t d) {
  QuasiMetricAudit a;
  a.triples = triples;
  const auto excess = [&](double xz, double xy, double yz) {
    return (xz - rho.gamma() * (xy + yz)) / std::max(1.0, xz);
  };
  a.triangle_excess = -std::numeric_limits<double>::infinity();
  if (rho.kind() == QuasiMetricKind::absolute) {
    CounterRng rng(derive_key(seed, "quasi_metric"), 0, 0);
    for (std::size_t i = 0; i < triples; ++i) {
      const double x = 10.0 * rng.normal();
      const double y = 10.0 * rng.normal();
      const double z = 10.0 * rng.normal();
      a.symmetry_defect = std::max(a.symmetry_defect, std::abs(rho(x, y) - rho(y, x)));
      a.identity_defect = std::max(a.identity_defect, rho(x, x));
      a.triangle_excess = std::max(a.triangle_excess, excess(rho(x, z), rho(x, y), rho(y, z)));
    }
    return a;
  }
  for (std::size_t i = 0; i < triples; ++i) {
    // Moderate magnitudes keep fast-growing gauges finite.
    const auto f = random_orlicz_vector(space, d, seed, 3 * i, -2.0, 1.0);
    const auto g = random_orlicz_vector(space, d, seed, 3 * i + 1, -2.0, 1.0);
    const auto h = random_orlicz_vector(space, d, seed, 3 * i + 2, -2.0, 1.0);
    a.symmetry_defect = std::max(a.symmetry_defect, std::abs(rho(f, g) - rho(g, f)));
    a.identity_defect = std::max(a.identity_defect, rho(f, f));
    a.triangle_excess = std::max(a.triangle_excess, excess(rho(f, h), rho(f, g), rho(g, h)));
  }
  return a;
}

// ---- good lambda ---------------------------------------------------------

double good_lambda_bound(int line, double beta, double delta) {
  if (!(beta > 1.0)) throw std::invalid_argument("good-lambda needs beta > 1");
  if (!(delta > 0.0)) throw std::invalid_argument("good-lambda needs delta > 0");
  if (line == 1) return delta * delta / ((beta - 1.0) * (beta - 1.0));
  if (line == 2) return delta * delta / (beta * beta - 1.0);
  throw std::invalid_argument("good-lambda line must be 1 or 2");
}

namespace {

struct ExitSample {
  double x;  // sup_{t<=tau} |B_t|
  double y;  // tau^{1/2}
};

ExitSample exit_sample(const BrownianBundle& b, const StoppingTimeSpec& stop) {
  const auto a = abs_path(b.path(0));
  const std::size_t tau = stop_index(stop, a, b.grid());
  const double sup = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(tau) + 1);
  return {sup, std::sqrt(b.grid().time(tau))};
}

}  // namespace

std::vector<RatioReport> estimate_good_lambda(const GoodLambdaConfig& cfg) {
  if (cfg.lambdas.empty()) throw std::invalid_argument("good-lambda: empty lambda grid");
  if (cfg.betas.empty() || cfg.deltas.empty()) throw std::invalid_argument("good-lambda: empty beta/delta grid");
  for (double b : cfg.betas) good_lambda_bound(1, b, 1.0);
  for (double d : cfg.deltas) good_lambda_bound(1, 2.0, d);
  check_mc(cfg.mc);

  const PathGrid grid = fine_grid(cfg.grid);
  const auto steps = resolution_steps(cfg.grid);
  const std::size_t nb = cfg.betas.size(), nd = cfg.deltas.size(), nl = cfg.lambdas.size();
  const auto idx = [&](std::size_t r, std::size_t bi, std::size_t di, std::size_t li, std::size_t line) {
    return (((r * nb + bi) * nd + di) * nl + li) * 2 + line;
  };
  const std::uint64_t key = derive_key(cfg.mc.seed, cfg.experiment);

  const Bank bank = run_replicates(cfg.mc.replicates, Bank(steps.size() * nb * nd * nl * 2), [&](Bank& acc,
                                                                                                  std::size_t rep) {
    const auto fine = simulate_bundle(key, rep, 1, grid);
    const auto res = resolutions(fine, cfg.grid.refine);
    for (std::size_t r = 0; r < res.size(); ++r) {
      const ExitSample s = exit_sample(res[r], cfg.stop);
      for (std::size_t bi = 0; bi < nb; ++bi) {
        for (std::size_t di = 0; di < nd; ++di) {
          for (std::size_t li = 0; li < nl; ++li) {
            const double l = cfg.lambdas[li], b = cfg.betas[bi], d = cfg.deltas[di];
            acc.m[idx(r, bi, di, li, 0)].add(s.x > b * l && s.y < d * l ? 1.0 : 0.0, s.x > l ? 1.0 : 0.0);
            acc.m[idx(r, bi, di, li, 1)].add(s.y > b * l && s.x < d * l ? 1.0 : 0.0, s.y > l ? 1.0 : 0.0);
          }
        }
      }
    }
  });

  std::vector<RatioReport> out;
  for (std::size_t r = 0; r < steps.size(); ++r) {
    for (std::size_t bi = 0; bi < nb; ++bi) {
      for (std::size_t di = 0; di < nd; ++di) {
        for (std::size_t li = 0; li < nl; ++li) {
          for (int line = 1; line <= 2; ++line) {
            const double b = cfg.betas[bi], d = cfg.deltas[di];
            out.push_back(make_ratio_report(
                cfg.experiment,
                join({param("line", line), param("beta", b), param("delta", d), param("lambda", cfg.lambdas[li]),
                      param("a", cfg.stop.level), param("T", cfg.grid.horizon), grid_param(steps[r])}),
                line == 1 ? "good-lambda: P(sup > beta l, sqrt(tau) < delta l) vs P(sup > l)"
                          : "good-lambda: P(sqrt(tau) > beta l, sup < delta l) vs P(sqrt(tau) > l)",
                bank.m[idx(r, bi, di, li, static_cast<std::size_t>(line - 1))], good_lambda_bound(line, b, d),
                steps[r]));
          }
        }
      }
    }
  }
  return out;
}

double derive_moment_constant(double beta, double delta, double c_delta, double p) {
  if (!(beta > 1.0) || !(delta > 0.0) || !(p > 0.0) || c_delta < 0.0) {
    throw std::invalid_argument("moment constant needs beta > 1, delta > 0, p > 0, c_delta >= 0");
  }
  const double room = std::pow(beta, -p) - c_delta;
  if (!(room > 0.0)) {
    throw std::domain_error("infeasible constant: c_delta >= beta^-p (choose a smaller delta)");
  }
  return std::pow(delta, -p) / room;
}

std::vector<RatioReport> moment_constant_check(const GoodLambdaConfig& cfg, double p) {
  check_mc(cfg.mc);
  struct Case {
    double beta, delta, c;
  };
  std::vector<Case> cases;
  for (double b : cfg.betas) {
    for (double d : cfg.deltas) {
      const double cd = good_lambda_bound(1, b, d);
      if (cd < std::pow(b, -p)) cases.push_back({b, d, derive_moment_constant(b, d, cd, p)});
    }
  }
  if (cases.empty()) throw std::domain_error("moment constant: no feasible (beta, delta) pair");

  const PathGrid grid = fine_grid(cfg.grid);
  const auto steps = resolution_steps(cfg.grid);
  const std::uint64_t key = derive_key(cfg.mc.seed, cfg.experiment);
  const Bank bank = run_replicates(cfg.mc.replicates, Bank(steps.size()), [&](Bank& acc, std::size_t rep) {
    const auto fine = simulate_bundle(key, rep, 1, grid);
    const auto res = resolutions(fine, cfg.grid.refine);
    for (std::size_t r = 0; r < res.size(); ++r) {
      const ExitSample s = exit_sample(res[r], cfg.stop);
      acc.m[r].add(std::pow(s.x, p), std::pow(s.y, p));
    }
  });

  std::vector<RatioReport> out;
  for (std::size_t r = 0; r < steps.size(); ++r) {
    for (const Case& c : cases) {
      out.push_back(make_ratio_report(
          cfg.experiment,
          join({param("beta", c.beta), param("delta", c.delta), param("p", p), param("C", c.c), grid_param(steps[r])}),
          "moment comparison E sup^p <= C E tau^(p/2) from good-lambda", bank.m[r], c.c, steps[r]));
    }
  }
  return out;
}

// ---- scalar BDG ----------------------------------------------------------

std::vector<RatioReport> bdg_ratio(const BdgConfig& cfg) {
  check_mc(cfg.mc);
  if (cfg.scales.empty()) throw std::invalid_argument("bdg_ratio: empty scaling sweep");
  const GrowthFunction phi = make_gauge(cfg.phi);
  const bool linear = is_linear(cfg.phi);
  const PathGrid grid = fine_grid(cfg.grid);
  const auto steps = resolution_steps(cfg.grid);
  const ScalarMartingale mart(cfg.martingale, cfg.grid.horizon, cfg.blocks == 0 ? cfg.grid.n : cfg.blocks);
  const std::size_t ns = cfg.scales.size();
  const std::uint64_t key = derive_key(cfg.mc.seed, cfg.experiment);

  const Bank bank = run_replicates(cfg.mc.replicates, Bank(steps.size() * ns * 2), [&](Bank& acc, std::size_t rep) {
    const auto fine = simulate_bundle(key, rep, mart.dimension(), grid);
    const auto res = resolutions(fine, cfg.grid.refine);
    for (std::size_t r = 0; r < res.size(); ++r) {
      const ScalarPath path = mart.sample(res[r]);
      const auto a = abs_path(path.m);
      const std::size_t tau = stop_index(cfg.stop, a, res[r].grid());
      for (std::size_t si = 0; si < ns; ++si) {
        const double c = cfg.scales[si];
        double sup = 0.0;
        for (std::size_t k = 0; k <= tau; ++k) {
          const double v = c * path.m[k];
          sup = std::max(sup, phi(v * v));
        }
        const double bracket = phi(c * c * path.eta[tau]);
        acc.m[(r * ns + si) * 2].add(sup, bracket);
        acc.m[(r * ns + si) * 2 + 1].add(bracket, sup);
      }
    }
  });

  std::vector<RatioReport> out;
  const std::string anchor = "two-sided BDG: E sup Phi(|M|^2) vs E Phi(<M>_tau)";
  for (std::size_t r = 0; r < steps.size(); ++r) {
    std::vector<double> ratios;
    for (std::size_t si = 0; si < ns; ++si) {
      const std::string common = join({param("martingale", cfg.martingale), param("phi", phi.name()),
                                       param("c", cfg.scales[si]), grid_param(steps[r])});
      auto fwd = make_ratio_report(cfg.experiment, join({"dir=forward", common}), anchor,
                                   bank.m[(r * ns + si) * 2], linear ? std::optional<double>(4.0) : std::nullopt,
                                   steps[r]);
      ratios.push_back(fwd.ratio);
      out.push_back(std::move(fwd));
      out.push_back(make_ratio_report(cfg.experiment, join({"dir=reverse", common}), anchor,
                                      bank.m[(r * ns + si) * 2 + 1],
                                      linear ? std::optional<double>(1.0) : std::nullopt, steps[r]));
    }
    const bool homogeneous = cfg.phi.family == GaugeFamily::power;
    if (homogeneous) {
      const auto base_it = std::find(cfg.scales.begin(), cfg.scales.end(), 1.0);
      const std::size_t base = base_it == cfg.scales.end() ? 0 : static_cast<std::size_t>(base_it - cfg.scales.begin());
      for (std::size_t si = 0; si < ns; ++si) {
        if (si == base) continue;
        const double diff = std::isnan(ratios[si]) && std::isnan(ratios[base])
                                ? 0.0
                                : std::abs(ratios[si] / ratios[base] - 1.0);
        out.push_back(make_exact_report(
            cfg.experiment,
            join({"dir=homogeneity", param("martingale", cfg.martingale), param("phi", phi.name()),
                  param("c", cfg.scales[si]), grid_param(steps[r])}),
            "scaling invariance of the BDG ratio", diff, 1.0, linear ? 0.0 : 1e-12, steps[r]));
      }
    }
  }
  return out;
}

// ---- Doob-Orlicz ---------------------------------------------------------

std::string to_string(PairKind kind) {
  switch (kind) {
    case PairKind::identity: return "identity";
    case PairKind::dominated: return "dominated";
    case PairKind::doob: return "doob";
  }
  return "doob";
}

PairKind parse_pair_kind(const std::string& name) {
  if (name == "identity") return PairKind::identity;
  if (name == "dominated") return PairKind::dominated;
  if (name == "doob") return PairKind::doob;
  throw std::invalid_argument("unknown pair kind '" + name + "'");
}

namespace {

// A2 gauge, or one within a factor 2 of a convex A2 minorant; returns kappa.
double require_a2(const GrowthFunction& gauge, const GaugeClassReport& report) {
  if (report.is_A2()) return *report.kappa_A2;
  if (report.is_A2_equivalent() && report.kappa_integral) return *report.kappa_integral;
  throw ClassPreconditionError("gauge '" + gauge.name() + "' fails the A2 probe: " + report.diagnostic);
}

}  // namespace

std::vector<RatioReport> doob_orlicz_check(const DoobOrliczConfig& cfg) {
  check_mc(cfg.mc);
  if (cfg.audit_lambdas.empty()) throw std::invalid_argument("doob_orlicz: empty audit grid");
  const GrowthFunction gauge = make_gauge(cfg.lambda);
  const double kappa = require_a2(gauge, classify_gauge(gauge));
  const double alpha = 1.0 / (2.0 * (1.0 + kappa));

  const PathGrid grid = fine_grid(cfg.grid);
  const auto steps = resolution_steps(cfg.grid);
  const ScalarMartingale mart(cfg.martingale, cfg.grid.horizon, cfg.grid.n);
  const std::size_t d = cfg.pair == PairKind::dominated ? 2 : mart.dimension();
  const std::size_t nl = cfg.audit_lambdas.size();
  const std::size_t per_res = nl + 2;
  const std::uint64_t key = derive_key(cfg.mc.seed, cfg.experiment);

  const Bank bank = run_replicates(cfg.mc.replicates, Bank(steps.size() * per_res), [&](Bank& acc,
                                                                                        std::size_t rep) {
    const auto fine = simulate_bundle(key, rep, d, grid);
    const auto res = resolutions(fine, cfg.grid.refine);
    for (std::size_t r = 0; r < res.size(); ++r) {
      double xi = 0.0, eta = 0.0;
      const std::size_t n = res[r].grid().steps();
      if (cfg.pair == PairKind::dominated) {
        const double a = std::abs(res[r].at(0, n)), b = std::abs(res[r].at(1, n));
        xi = std::min(a, b);
        eta = std::max(a, b);
      } else {
        const ScalarPath path = mart.sample(res[r]);
        eta = std::abs(path.m[n]);
        xi = eta;
        if (cfg.pair == PairKind::doob) {
          for (double v : path.m) xi = std::max(xi, std::abs(v));
        }
      }
      PairMoments* m = acc.m.data() + r * per_res;
      for (std::size_t li = 0; li < nl; ++li) {
        const double l = cfg.audit_lambdas[li];
        const bool hit = xi >= l;
        m[li].add(hit ? 1.0 : 0.0, hit ? eta / l : 0.0);
        if (cfg.pair == PairKind::dominated && hit && eta / l < 1.0) ++acc.violations;
      }
      m[nl].add(gauge(xi), gauge(eta));
      m[nl + 1].add(gauge(alpha * xi), gauge(eta));
    }
  });

  std::vector<RatioReport> out;
  const std::string pair = param("pair", to_string(cfg.pair));
  const std::string gname = param("gauge", gauge.name());
  bool audit_ok = true;
  for (std::size_t r = 0; r < steps.size(); ++r) {
    for (std::size_t li = 0; li < nl; ++li) {
      auto row = make_ratio_report(cfg.experiment,
                                   join({"check=audit", pair, param("lambda", cfg.audit_lambdas[li]),
                                         grid_param(steps[r])}),
                                   "weak-type hypothesis P(xi >= l) <= E(eta 1{xi >= l}) / l",
                                   bank.m[r * per_res + li], 1.0, steps[r]);
      audit_ok = audit_ok && row.pass;
      out.push_back(std::move(row));
    }
  }
  if (cfg.pair == PairKind::dominated) {
    auto row = make_exact_report(cfg.experiment, join({"check=pointwise", pair}),
                                 "pointwise hypothesis on {xi >= l} for xi <= eta",
                                 static_cast<double>(bank.violations), 1.0, 0.0, steps.front());
    audit_ok = audit_ok && row.pass;
    out.push_back(std::move(row));
  }
  const std::string anchor = "Doob-Orlicz: E L(xi) vs E L(eta)";
  if (!audit_ok) {
    out.push_back(withheld(cfg.experiment, join({"check=conclusion", pair, gname}), anchor));
    return out;
  }

  std::optional<double> bound;
  if (cfg.pair != PairKind::doob) {
    bound = 1.0;
  } else if (cfg.lambda.family == GaugeFamily::power && cfg.lambda.p > 1.0) {
    bound = std::pow(cfg.lambda.p / (cfg.lambda.p - 1.0), cfg.lambda.p);
  }
  std::vector<double> ratios;
  for (std::size_t r = 0; r < steps.size(); ++r) {
    auto row = make_ratio_report(cfg.experiment, join({"check=conclusion", pair, gname, grid_param(steps[r])}),
                                 anchor, bank.m[r * per_res + nl], bound, steps[r]);
    ratios.push_back(row.ratio);
    out.push_back(std::move(row));
    out.push_back(make_ratio_report(
        cfg.experiment, join({"check=scaled", pair, gname, param("kappa", kappa), grid_param(steps[r])}),
        "E L(xi / (2 (1 + kappa))) <= E L(eta)", bank.m[r * per_res + nl + 1], 1.0, steps[r]));
  }
  if (steps.size() == 2 && !std::isnan(ratios[1])) {
    out.push_back(make_exact_report(cfg.experiment,
                                    join({"check=refinement", pair, gname, param("tol", cfg.refinement_tolerance)}),
                                    "refinement stability of the Doob-Orlicz ratio",
                                    std::abs(ratios[0] - ratios[1]), ratios[1], cfg.refinement_tolerance,
                                    steps[1]));
  }
  return out;
}

// ---- abstract maximal inequality -----------------------------------------

std::vector<RatioReport> lenglart_check(const LenglartConfig& cfg) {
  check_mc(cfg.mc);
  if (cfg.horizons.empty() || cfg.scales.empty()) throw std::invalid_argument("lenglart: empty sweep");
  const bool modular = cfg.metric == QuasiMetricKind::modular;
  if (!modular && cfg.q != 2.0) throw std::invalid_argument("lenglart: the absolute-difference pairing needs q = 2");
  if (modular && cfg.q != 1.0) throw std::invalid_argument("lenglart: the modular pairing needs q = 1");
  if (!(cfg.kappa > 0.0)) throw std::invalid_argument("lenglart: kappa must be positive");
  if (modular && cfg.integrand == "B") {
    throw std::invalid_argument("lenglart: the modular pairing needs a suite integrand, not 'B'");
  }
  for (double t : cfg.horizons) {
    if (!(t > 0.0) || t > cfg.grid.horizon) throw std::invalid_argument("lenglart: horizon outside the grid");
  }

  const GrowthFunction phi = make_gauge(cfg.phi);
  const GrowthFunction gauge = make_gauge(cfg.lambda);
  const DiscreteMeasureSpace space = modular ? DiscreteMeasureSpace(cfg.weights) : DiscreteMeasureSpace({1.0});
  std::optional<ProcessSpec> spec;
  double b = 1.0;
  std::size_t d = 1;
  if (cfg.integrand != "B") {
    spec = suite_integrand(cfg.integrand, cfg.grid.horizon);
    if (!spec->bound) {
      throw std::invalid_argument("lenglart: integrand '" + cfg.integrand +
                                  "' has no uniform bound, so the hypothesis cannot be certified");
    }
    b = *spec->bound;
    d = spec_dimension(*spec);
  }
  if (modular && !classify_gauge(gauge).is_A1) {
    throw ClassPreconditionError("lenglart: gauge '" + gauge.name() + "' fails the A1 probe");
  }
  const QuasiMetric rho = modular ? QuasiMetric::modular(gauge) : QuasiMetric::absolute();
  // ||N_T||_inf from the uniform integrand bound.
  const auto n_sup = [&](double t) {
    if (!modular) return b * std::sqrt(t);
    double s = 0.0;
    for (double w : space.weights()) s += w * gauge(b * std::sqrt(t));
    return s;
  };

  const PathGrid grid(cfg.grid.horizon, cfg.grid.n);
  const std::size_t nt = cfg.horizons.size(), nc = cfg.scales.size(), atoms = space.size();
  const std::uint64_t key = derive_key(cfg.mc.seed, cfg.experiment);
  const std::size_t audit_offset = nt * nc;

  const Bank bank = run_replicates(cfg.mc.replicates, Bank(nt * nc + nt), [&](Bank& acc, std::size_t rep) {
    const auto bundle = simulate_bundle(key, rep, d, grid);
    const std::size_t n = grid.steps();
    std::vector<double> integral(atoms * (n + 1)), eta(atoms * (n + 1));
    if (spec) {
      const IntegralProcess ip = ito_integral(*spec, bundle, space);
      integral = ip.integral;
      eta = ip.eta;
    } else {
      for (std::size_t k = 0; k <= n; ++k) {
        integral[k] = bundle.at(0, k);
        eta[k] = grid.time(k);
      }
    }
    // rho(c xi_k, 0) and N_k for scale c.
    const auto distance = [&](double c, std::size_t k) {
      if (!modular) return std::abs(c * integral[k]);
      double s = 0.0;
      for (std::size_t a = 0; a < atoms; ++a) s += space.weights()[a] * gauge(std::abs(c * integral[a * (n + 1) + k]));
      return s;
    };
    const auto majorant = [&](double c, std::size_t k) {
      if (!modular) return c * std::sqrt(eta[k]);
      double s = 0.0;
      for (std::size_t a = 0; a < atoms; ++a) s += space.weights()[a] * gauge(c * std::sqrt(eta[a * (n + 1) + k]));
      return s;
    };

    for (std::size_t ci = 0; ci < nc; ++ci) {
      const double c = cfg.scales[ci];
      std::vector<double> sup(n + 1);
      double running = 0.0;
      for (std::size_t k = 0; k <= n; ++k) {
        running = std::max(running, phi(distance(c, k)));
        sup[k] = running;
      }
      for (std::size_t ti = 0; ti < nt; ++ti) {
        const std::size_t tau = grid.index_of(cfg.horizons[ti]);
        acc.m[ti * nc + ci].add(sup[tau], phi(majorant(c, tau)));
      }
    }
    // Audit at tau' = first time rho(xi, xi_0) >= level, capped at tau.
    std::vector<double> dist(n + 1);
    for (std::size_t k = 0; k <= n; ++k) dist[k] = distance(1.0, k);
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const std::size_t tau = grid.index_of(cfg.horizons[ti]);
      const std::size_t tau_p = std::min(hitting_time(std::span<const double>(dist).first(tau + 1), cfg.audit_level,
                                                      HitMode::weak),
                                         tau);
      double lhs = 0.0;
      if (modular) {
        for (std::size_t a = 0; a < atoms; ++a) {
          lhs += space.weights()[a] * gauge(std::abs(integral[a * (n + 1) + tau] - integral[a * (n + 1) + tau_p]));
        }
      } else {
        lhs = std::pow(std::abs(integral[tau] - integral[tau_p]), cfg.q);
      }
      const double rhs = tau_p < tau ? std::pow(n_sup(cfg.horizons[ti]), cfg.q) : 0.0;
      acc.m[audit_offset + ti].add(lhs, rhs);
    }
  });

  std::vector<RatioReport> out;
  const std::string common = join({param("metric", modular ? "modular" : "absolute"),
                                   param("integrand", cfg.integrand), param("phi", phi.name()),
                                   modular ? param("gauge", gauge.name()) : "", param("q", cfg.q),
                                   param("gamma", rho.gamma()), grid_param(cfg.grid.n)});
  bool audit_ok = true;
  for (std::size_t ti = 0; ti < nt; ++ti) {
    auto row = make_ratio_report(cfg.experiment,
                                 join({"check=audit", common, param("T", cfg.horizons[ti]),
                                       param("level", cfg.audit_level)}),
                                 "hypothesis E rho(xi_tau, xi_tau')^q <= kappa ||N_tau||^q P(tau' < tau)",
                                 bank.m[audit_offset + ti], cfg.kappa, cfg.grid.n);
    audit_ok = audit_ok && row.pass;
    out.push_back(std::move(row));
  }
  const std::string anchor = "maximal inequality: E sup Phi(rho(xi_t, xi_0)) vs E Phi(N_tau)";
  if (!audit_ok) {
    out.push_back(withheld(cfg.experiment, join({"check=conclusion", common}), anchor));
    return out;
  }
  RatioRange range;
  for (std::size_t ti = 0; ti < nt; ++ti) {
    for (std::size_t ci = 0; ci < nc; ++ci) {
      auto row = make_ratio_report(
          cfg.experiment,
          join({"check=conclusion", common, param("T", cfg.horizons[ti]), param("c", cfg.scales[ci])}), anchor,
          bank.m[ti * nc + ci], std::nullopt, cfg.grid.n);
      range.add(row.ratio);
      out.push_back(std::move(row));
    }
  }
  out.push_back(make_exact_report(cfg.experiment,
                                  join({"check=sweep", common, param("factor", cfg.stability_factor)}),
                                  "sweep stability: max/min ratio over horizons and scales", range.hi, range.lo,
                                  cfg.stability_factor, cfg.grid.n));
  return out;
}

// ---- Orlicz-valued BDG ---------------------------------------------------

std::vector<RatioReport> orlicz_bdg_check(const OrliczBdgConfig& cfg) {
  check_mc(cfg.mc);
  if (cfg.integrands.empty() || cfg.horizons.empty() || cfg.scales.empty()) {
    throw std::invalid_argument("orlicz_bdg: empty sweep");
  }
  for (double t : cfg.horizons) {
    if (!(t > 0.0) || t > cfg.grid.horizon) throw std::invalid_argument("orlicz_bdg: horizon outside the grid");
  }
  const GrowthFunction gauge = make_gauge(cfg.lambda);
  const GrowthFunction phi = make_gauge(cfg.phi);
  const GaugeClassReport cls = classify_gauge(gauge);
  if (!cls.is_A1) throw ClassPreconditionError("orlicz_bdg: gauge '" + gauge.name() + "' fails the A1 probe");
  const bool reverse = cls.is_A2() || cls.is_A2_equivalent();
  const bool power = cfg.lambda.family == GaugeFamily::power;

  const DiscreteMeasureSpace space(cfg.weights);
  std::vector<ProcessSpec> specs;
  for (const auto& name : cfg.integrands) {
    specs.push_back(suite_integrand(name, cfg.grid.horizon, cfg.blocks));
    if (spec_dimension(specs.back()) > cfg.d) {
      throw std::invalid_argument("orlicz_bdg: integrand '" + name + "' needs more than d coordinates");
    }
  }

  const PathGrid grid = fine_grid(cfg.grid);
  const auto steps = resolution_steps(cfg.grid);
  const std::size_t ni = specs.size(), nt = cfg.horizons.size(), nc = cfg.scales.size(), atoms = space.size();
  const auto idx = [&](std::size_t r, std::size_t i, std::size_t t, std::size_t c, std::size_t dir) {
    return ((((r * ni + i) * nt + t) * nc + c) * 2) + dir;
  };
  const std::uint64_t key = derive_key(cfg.mc.seed, cfg.experiment);

  const Bank bank = run_replicates(cfg.mc.replicates, Bank(steps.size() * ni * nt * nc * 2), [&](Bank& acc,
                                                                                                  std::size_t rep) {
    const auto fine = simulate_bundle(key, rep, cfg.d, grid);
    const auto res = resolutions(fine, cfg.grid.refine);
    std::vector<double> norms(atoms);
    for (std::size_t r = 0; r < res.size(); ++r) {
      const PathGrid& g = res[r].grid();
      const std::size_t n = g.steps();
      std::vector<std::size_t> taus(nt);
      for (std::size_t t = 0; t < nt; ++t) taus[t] = g.index_of(cfg.horizons[t]);
      for (std::size_t i = 0; i < ni; ++i) {
        const IntegralProcess ip = ito_integral(specs[i], res[r], space);
        for (std::size_t c = 0; c < nc; ++c) {
          const double sc = cfg.scales[c];
          double running = 0.0;
          std::size_t argmax = 0;
          std::vector<double> sup(n + 1);
          for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t a = 0; a < atoms; ++a) norms[a] = std::abs(sc * ip.integral[a * (n + 1) + k]);
            const double mod = modular_of_norms(norms, space.weights(), gauge);
            if (mod > running) {
              running = mod;
              argmax = k;
            }
            sup[k] = running;
          }
          for (std::size_t t = 0; t < nt; ++t) {
            for (std::size_t a = 0; a < atoms; ++a) norms[a] = sc * std::sqrt(ip.eta[a * (n + 1) + taus[t]]);
            const double lhs = phi(sup[taus[t]]);
            const double rhs = phi(modular_of_norms(norms, space.weights(), gauge));
            acc.m[idx(r, i, t, c, 0)].add(lhs, rhs);
            acc.m[idx(r, i, t, c, 1)].add(rhs, lhs);
          }
          if (power && sc == 1.0) {
            // Luxemburg norm at the running argmax against modular^{1/p}.
            for (std::size_t a = 0; a < atoms; ++a) norms[a] = std::abs(ip.integral[a * (n + 1) + argmax]);
            const double mod = modular_of_norms(norms, space.weights(), gauge);
            if (mod > 0.0) {
              const double lux = luxemburg_norm_of_norms(norms, space.weights(), gauge);
              const double ref = std::pow(mod, 1.0 / cfg.lambda.p);
              acc.max_value = std::max(acc.max_value, std::abs(lux - ref) / ref);
            }
          }
        }
      }
    }
  });

  std::vector<RatioReport> out;
  const std::string gname = param("gauge", gauge.name());
  const std::string pname = param("phi", phi.name());
  const char* anchors[2] = {"Orlicz BDG forward: E Phi(sup [I_t]_L) vs E Phi([<X>_tau^(1/2)]_L)",
                            "Orlicz BDG reverse: E Phi([<X>_tau^(1/2)]_L) vs E Phi(sup [I_t]_L)"};
  const std::size_t dirs = reverse ? 2 : 1;
  std::vector<double> ratio(bank.m.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t r = 0; r < steps.size(); ++r) {
    for (std::size_t i = 0; i < ni; ++i) {
      for (std::size_t dir = 0; dir < dirs; ++dir) {
        RatioRange range;
        const std::string head =
            join({dir == 0 ? "dir=forward" : "dir=reverse", param("integrand", cfg.integrands[i]), gname, pname});
        for (std::size_t t = 0; t < nt; ++t) {
          for (std::size_t c = 0; c < nc; ++c) {
            auto row = make_ratio_report(
                cfg.experiment,
                join({head, param("T", cfg.horizons[t]), param("c", cfg.scales[c]), grid_param(steps[r])}),
                anchors[dir], bank.m[idx(r, i, t, c, dir)], std::nullopt, steps[r]);
            ratio[idx(r, i, t, c, dir)] = row.ratio;
            range.add(row.ratio);
            out.push_back(std::move(row));
          }
        }
        out.push_back(make_exact_report(cfg.experiment,
                                        join({"check=sweep", head, param("factor", cfg.stability_factor),
                                              grid_param(steps[r])}),
                                        "sweep stability: max/min ratio over horizons and scales", range.hi,
                                        range.lo, cfg.stability_factor, steps[r]));
      }
    }
  }
  if (steps.size() == 2) {
    for (std::size_t i = 0; i < ni; ++i) {
      for (std::size_t dir = 0; dir < dirs; ++dir) {
        for (std::size_t t = 0; t < nt; ++t) {
          for (std::size_t c = 0; c < nc; ++c) {
            const double coarse = ratio[idx(0, i, t, c, dir)];
            const double fine = ratio[idx(1, i, t, c, dir)];
            if (std::isnan(coarse) && std::isnan(fine)) continue;
            out.push_back(make_exact_report(
                cfg.experiment,
                join({"check=refinement", dir == 0 ? "dir=forward" : "dir=reverse",
                      param("integrand", cfg.integrands[i]), gname, pname, param("T", cfg.horizons[t]),
                      param("c", cfg.scales[c]), param("tol", cfg.refinement_tolerance)}),
                "refinement stability of the Orlicz BDG ratio", std::abs(coarse - fine), fine,
                cfg.refinement_tolerance, steps[1]));
          }
        }
      }
    }
  }
  if (power) {
    out.push_back(make_exact_report(cfg.experiment, join({"check=lp_reduction", gname}),
                                    "power gauge: Luxemburg norm equals modular^(1/p)", bank.max_value, 1.0, 1e-6,
                                    steps.back()));
  }
  return out;
}

}  // namespace bdglab
