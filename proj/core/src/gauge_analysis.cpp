#include "bdglab/gauge_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bdglab/errors.hpp"

namespace bdglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPhiPointsPerDecade = 256;
constexpr int kZoomPoints = 33;
constexpr double kZoomWidth = 1e-13;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * per_decade)) + 1;
  std::vector<double> grid(n);
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = std::exp(llo + step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

double numeric_phi(const GrowthFunction& g, double s) {
  const double floor = g.domain_floor();
  const auto ratio = [&](double t) {
    const double lt = g(t);
    if (!(lt > 0.0)) return -kInf;
    const double lst = g(s * t);
    if (!std::isfinite(lt) || !std::isfinite(lst)) {
      std::ostringstream os;
      os << "gauge " << g.name() << " overflowed while probing phi(" << s << ") at t=" << t;
      throw GaugeOverflow(os.str());
    }
    return lst / lt;
  };

  const auto grid = geometric_grid(floor, 1.0 / floor, kPhiPointsPerDecade);
  double best = -kInf;
  std::size_t kbest = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double r = ratio(grid[k]);
    if (r > best) {
      best = r;
      kbest = k;
    }
  }
  if (best == -kInf) return 0.0;

  double left = grid[kbest == 0 ? 0 : kbest - 1];
  double right = grid[std::min(kbest + 1, grid.size() - 1)];
  for (int iter = 0; iter < 64 && std::log(right / left) > kZoomWidth; ++iter) {
    const double ll = std::log(left);
    const double step = (std::log(right) - ll) / (kZoomPoints - 1);
    int jbest = -1;
    double local = -kInf;
    for (int j = 0; j < kZoomPoints; ++j) {
      const double r = ratio(std::exp(ll + step * j));
      if (r > local) {
        local = r;
        jbest = j;
      }
    }
    best = std::max(best, local);
    const double lo = ll + step * std::max(jbest - 1, 0);
    const double hi = ll + step * std::min(jbest + 1, kZoomPoints - 1);
    left = std::exp(lo);
    right = std::exp(hi);
  }
  return best;
}

// Largest slack tolerated between consecutive secant slopes.
bool slopes_nondecreasing(double prev, double next) {
  return next >= prev - 1e-9 * std::abs(prev) - 1e-300;
}

class ComplementaryModel final : public GaugeModel {
 public:
  explicit ComplementaryModel(GrowthFunction base) : base_(std::move(base)) {}

  double value(double t) const override {
    if (t <= 0.0) return 0.0;
    const auto f = [this](double u) { return right_inverse_derivative(base_, u); };
    // Power-like inverses carry an endpoint singularity at 0, which
    // tanh-sinh absorbs; jumps (piecewise gauges) fall back to Kronrod.
    thread_local boost::math::quadrature::tanh_sinh<double> endpoint_rule;
    double err = 0.0;
    const double v = endpoint_rule.integrate(f, 0.0, t, 1e-12, &err);
    if (std::isfinite(v) && err <= 1e-10 * std::max(std::abs(v), 1e-300)) return v;
    return Kronrod::integrate(f, 0.0, t, 12, 1e-10);
  }
  double right_derivative(double t) const override { return right_inverse_derivative(base_, t); }
  std::string name() const override { return "complementary(" + base_.name() + ")"; }

 private:
  GrowthFunction base_;
};

// Lower convex hull of (0,0) and the finite grid points, evaluated at each
// grid point; returns max L/L^.
double convex_gap(const std::vector<double>& ts, const std::vector<double>& vs) {
  std::vector<double> hx{0.0};
  std::vector<double> hy{0.0};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    while (hx.size() >= 2) {
      const std::size_t a = hx.size() - 2;
      const std::size_t b = hx.size() - 1;
      const double cross = (hx[b] - hx[a]) * (vs[i] - hy[a]) - (hy[b] - hy[a]) * (ts[i] - hx[a]);
      if (cross <= 0.0) {
        hx.pop_back();
        hy.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(ts[i]);
    hy.push_back(vs[i]);
  }
  double gap = 1.0;
  std::size_t seg = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    while (seg + 2 < hx.size() && hx[seg + 1] < ts[i]) ++seg;
    const double w = (ts[i] - hx[seg]) / (hx[seg + 1] - hx[seg]);
    const double hull = hy[seg] + w * (hy[seg + 1] - hy[seg]);
    if (hull > 0.0) gap = std::max(gap, vs[i] / hull);
  }
  return gap;
}

std::optional<double> kappa_ratio(const GrowthFunction& g, double t, std::string& why) {
  const double lt = g(t);
  const auto f = [&](double u) { return g(t * std::exp(-u)) * std::exp(u) / lt; };
  double upper = 8.0;
  double total = Kronrod::integrate(f, 0.0, upper, 15, 1e-12);
  while (upper < 512.0) {
    const double tail = Kronrod::integrate(f, upper, 2.0 * upper, 15, 1e-12);
    total += tail;
    upper *= 2.0;
    if (!std::isfinite(tail)) break;
    if (tail < 1e-8) return total;
  }
  std::ostringstream os;
  os << "kappa quadrature did not converge at t=" << t << " (tail above 1e-8 at u=" << upper << ")";
  why = os.str();
  return std::nullopt;
}

}  // namespace

double phi_of(const GrowthFunction& gauge, double s, TransformRoute route) {
  if (!(s > 0.0)) throw std::invalid_argument("phi_of requires s > 0");
  if (route == TransformRoute::closed_form_if_available && gauge.closed_forms() &&
      gauge.closed_forms()->phi) {
    return gauge.closed_forms()->phi(s);
  }
  return numeric_phi(gauge, s);
}

double psi_of(const GrowthFunction& gauge, double t, TransformRoute route) {
  if (!(t > 0.0)) throw std::invalid_argument("psi requires t > 0");
  const auto& cf = gauge.closed_forms();
  if (route == TransformRoute::closed_form_if_available && cf && cf->psi) return cf->psi(t);

  const auto phi = [&](double s) { return numeric_phi(gauge, s); };
  double lo = 1.0;
  double hi = 1.0;
  if (phi(1.0) >= t) {
    lo = 1.0 / 16.0;
    while (phi(lo) >= t) {
      hi = lo;
      lo /= 16.0;
      if (lo < 1e-300) return 0.0;
    }
  } else {
    hi = 16.0;
    while (phi(hi) < t) {
      lo = hi;
      hi *= 16.0;
      if (hi > 1e150) {
        std::ostringstream os;
        os << "phi of " << gauge.name() << " stays below " << t << " up to s=1e150";
        throw BracketExhausted(os.str());
      }
    }
  }
  for (int iter = 0; iter < 200 && hi / lo - 1.0 > 1e-14; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (phi(mid) >= t) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

InverseTransforms inverse_transforms(const GrowthFunction& gauge, double t, TransformRoute route) {
  if (!(t > 0.0)) throw std::invalid_argument("inverse_transforms requires t > 0");
  const auto& cf = gauge.closed_forms();
  if (route == TransformRoute::closed_form_if_available && cf && cf->psi && cf->varphi) {
    return {cf->psi(t), cf->varphi(t)};
  }
  const double inner = psi_of(gauge, 1.0 / t, route);
  return {psi_of(gauge, t, route), inner > 0.0 ? 1.0 / inner : kInf};
}

double right_inverse_derivative(const GrowthFunction& gauge, double u) {
  if (u <= 0.0) return 0.0;
  const auto a = [&](double s) { return gauge.right_derivative(s); };
  if (a(0.0) > u) return 0.0;
  double lo = 1.0;
  double hi = 1.0;
  if (a(1.0) > u) {
    lo = 0.5;
    while (a(lo) > u) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return hi;
    }
  } else {
    hi = 2.0;
    while (!(a(hi) > u)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) {
        throw BracketExhausted("right derivative of " + gauge.name() + " stays bounded");
      }
    }
  }
  for (int iter = 0; iter < 200 && hi / lo - 1.0 > 1e-15; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (a(mid) > u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

NFunctionProbe probe_n_function(const GrowthFunction& gauge, double t_min, double t_max) {
  NFunctionProbe probe;
  const auto grid = geometric_grid(t_min, t_max, 64);
  std::vector<double> ts;
  std::vector<double> vs;
  for (double t : grid) {
    const double v = gauge(t);
    if (!std::isfinite(v)) break;
    ts.push_back(t);
    vs.push_back(v);
  }
  const bool overflowed = ts.size() < grid.size();

  probe.convex = ts.size() >= 3;
  double prev = probe.convex ? vs[0] / ts[0] : 0.0;  // secant from the origin
  for (std::size_t i = 0; probe.convex && i + 1 < ts.size(); ++i) {
    const double slope = (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
    if (!slopes_nondecreasing(prev, slope)) {
      probe.convex = false;
      std::ostringstream os;
      os << "secant slope drops from " << prev << " to " << slope << " near t=" << ts[i];
      probe.diagnostic = os.str();
      break;
    }
    prev = slope;
  }

  const double unit = gauge(1.0);
  probe.vanishes_at_zero = gauge(t_min) / t_min <= 1e-2 * unit;
  probe.explodes_at_inf = overflowed || gauge(t_max) / t_max >= 1e2 * unit;
  if (probe.diagnostic.empty()) {
    if (!probe.vanishes_at_zero) probe.diagnostic = "L(t)/t does not vanish at the lower probe end";
    else if (!probe.explodes_at_inf) probe.diagnostic = "L(t)/t does not explode at the upper probe end";
  }
  return probe;
}

GrowthFunction complementary_gauge(const GrowthFunction& gauge, TransformRoute route) {
  const auto probe = probe_n_function(gauge);
  if (!probe.ok()) {
    throw ClassPreconditionError("complementary_gauge: " + gauge.name() +
                                 " is not an N-function (" + probe.diagnostic + ")");
  }
  const auto& cf = gauge.closed_forms();
  if (route == TransformRoute::closed_form_if_available && cf && cf->complementary) {
    return make_gauge(*cf->complementary);
  }
  return {std::make_shared<ComplementaryModel>(gauge), GaugeFamily::complementary, std::nullopt,
          std::nullopt, gauge.domain_floor()};
}

double young_gap(const GrowthFunction& gauge, const GrowthFunction& complementary, double s, double t) {
  return gauge(s) + complementary(t) - s * t;
}

bool GaugeClassReport::is_A2_equivalent(double max_gap) const {
  return is_A1 && kappa_integral.has_value() && n_function.vanishes_at_zero &&
         n_function.explodes_at_inf && convex_equivalence <= max_gap;
}

GaugeClassReport classify_gauge(const GrowthFunction& gauge, const ProbeConfig& cfg) {
  if (!(cfg.t_min > 0.0) || !(cfg.t_max > cfg.t_min) || std::log10(cfg.t_max / cfg.t_min) < 4.0) {
    throw std::invalid_argument("classify_gauge: probe grid must span at least four decades");
  }
  if (cfg.lambdas.empty() || cfg.s_grid.empty() || cfg.points_per_decade < 1) {
    throw std::invalid_argument("classify_gauge: probe grids must be nonempty");
  }

  GaugeClassReport rep;
  rep.probe = cfg;
  std::ostringstream diag;

  const auto grid = geometric_grid(cfg.t_min, cfg.t_max, cfg.points_per_decade);
  std::vector<double> values(grid.size());
  bool monotone = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = gauge(grid[i]);
    if (i > 0 && values[i] < values[i - 1]) monotone = false;
  }
  if (!monotone) diag << "not nondecreasing on the probe grid; ";

  // c_lambda over the full grid and over its inner half (in log scale);
  // divergence shows up as a full-grid sup outrunning the inner one.
  const double inner_lo = std::pow(cfg.t_min, 0.75) * std::pow(cfg.t_max, 0.25);
  const double inner_hi = std::pow(cfg.t_min, 0.25) * std::pow(cfg.t_max, 0.75);
  bool c2_stable = false;
  for (double lam : cfg.lambdas) {
    double full = 0.0;
    double inner = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double lt = values[i];
      const double llt = gauge(lam * grid[i]);
      double r = (lt > 0.0 && std::isfinite(lt) && std::isfinite(llt)) ? llt / lt : kInf;
      if (std::isnan(r)) r = kInf;
      full = std::max(full, r);
      if (grid[i] >= inner_lo && grid[i] <= inner_hi) inner = std::max(inner, r);
    }
    rep.c_lambda.emplace_back(lam, full);
    if (lam == 2.0) c2_stable = std::isfinite(full) && full <= 1.01 * inner;
  }
  if (!c2_stable) diag << "c_2 diverges across the probe grid; ";

  const double unit = gauge(1.0);
  const bool vanishes = values.front() <= 0.1 * unit;
  if (!vanishes) diag << "no decay towards zero; ";
  rep.is_A0 = monotone && c2_stable && vanishes;

  const double top = gauge(cfg.t_max);
  const bool diverges = std::isfinite(top) ? top > (1.0 + 1e-3) * gauge(cfg.t_max / 10.0) : true;
  if (!diverges) diag << "bounded at the upper probe end; ";

  bool decays = rep.is_A0;
  if (rep.is_A0) {
    try {
      for (double s : cfg.s_grid) rep.phi_at_s.push_back(phi_of(gauge, s));
      for (std::size_t k = 1; k < rep.phi_at_s.size(); ++k) {
        if (!(rep.phi_at_s[k] < (1.0 - 1e-3) * rep.phi_at_s[k - 1])) decays = false;
      }
      rep.phi_at_smallest_s = rep.phi_at_s.back();
    } catch (const GaugeOverflow& e) {
      decays = false;
      diag << e.what() << "; ";
    }
    if (!decays) diag << "phi(s) does not decay as s -> 0; ";
  }
  rep.is_A1 = rep.is_A0 && diverges && decays;

  rep.n_function = probe_n_function(gauge, cfg.t_min, cfg.t_max);
  rep.is_N_function = rep.n_function.ok();

  {
    std::vector<double> ts;
    std::vector<double> vs;
    for (double t : geometric_grid(cfg.t_min, cfg.t_max, 64)) {
      const double v = gauge(t);
      if (!std::isfinite(v)) break;
      ts.push_back(t);
      vs.push_back(v);
    }
    rep.convex_equivalence = ts.size() >= 2 ? convex_gap(ts, vs) : kInf;
  }

  if (rep.is_A1) {
    double worst = 0.0;
    bool ok = true;
    std::string why;
    for (double t : geometric_grid(cfg.kappa_t_min, cfg.kappa_t_max, cfg.kappa_points_per_decade)) {
      const auto k = kappa_ratio(gauge, t, why);
      if (!k) {
        ok = false;
        diag << why << "; ";
        break;
      }
      worst = std::max(worst, *k);
    }
    if (ok) {
      rep.kappa_integral = worst;
      if (rep.is_N_function) rep.kappa_A2 = worst;
    }
  }

  {
    const double t0 = cfg.t_min;
    const auto slope = [&](double t) { return std::log(gauge(2.0 * t) / gauge(t)) / std::log(2.0); };
    const double a0 = slope(t0);
    if (std::isfinite(a0)) {
      rep.rv_index = a0;
      rep.rv_residual = std::abs(slope(10.0 * t0) - a0);
    }
  }

  rep.diagnostic = diag.str();
  if (!rep.diagnostic.empty()) rep.diagnostic.resize(rep.diagnostic.size() - 2);
  return rep;
}

}  // namespace bdglab
