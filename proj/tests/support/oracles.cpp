#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace bdglab::oracle {

double phi_scan(const Fn& L, double s, double lo, double hi, int per_decade) {
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  const int n = static_cast<int>(std::ceil((lhi - llo) / std::log(10.0) * per_decade));
  const double step = (lhi - llo) / n;
  const auto neg_ratio = [&](double x) {
    const double t = std::exp(x);
    const double lt = L(t);
    return lt > 0.0 ? -L(s * t) / lt : 0.0;
  };
  int best = 0;
  double best_val = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double v = neg_ratio(llo + step * k);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double a = llo + step * std::max(best - 1, 0);
  const double b = llo + step * std::min(best + 1, n);
  const auto [x, v] = boost::math::tools::brent_find_minima(neg_ratio, a, b, 52);
  (void)x;
  return -std::min(v, best_val);
}

double generalized_inverse(const Fn& f, double t, double lo, double hi) {
  if (f(lo) >= t) return lo;
  if (f(hi) < t) throw std::domain_error("generalized_inverse: target not reached");
  for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    (f(mid) >= t ? hi : lo) = mid;
  }
  return hi;
}

double legendre(const Fn& L, double t) {
  const auto neg = [&](double s) { return L(s) - s * t; };
  double hi = 1.0;
  while (neg(hi) < 0.0 || neg(2.0 * hi) < neg(hi)) hi *= 2.0;
  const auto [s, v] = boost::math::tools::brent_find_minima(neg, 0.0, 2.0 * hi, 52);
  (void)s;
  return -v;
}

double right_inverse_scan(const Fn& a, double u, double hi, std::size_t points) {
  for (std::size_t k = 0; k <= points; ++k) {
    const double s = hi * static_cast<double>(k) / static_cast<double>(points);
    if (a(s) > u) return s;
  }
  throw std::domain_error("right_inverse_scan: a stays at or below u");
}

double kappa_ratio(const Fn& L, double t) {
  boost::math::quadrature::tanh_sinh<double> rule;
  // Abscissae where s^2 underflows carry no mass for an integrable singularity.
  const double v = rule.integrate([&](double s) { return s * s > 0.0 ? L(s * t) / (s * s) : 0.0; }, 0.0, 1.0);
  return v / L(t);
}

double luxemburg_root(std::span<const double> norms, std::span<const double> weights, const Fn& L) {
  const auto f = [&](double loglam) {
    const double lam = std::exp(loglam);
    double m = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i) m += weights[i] * L(norms[i] / lam);
    return m - 1.0;
  };
  double a = -1.0, b = 1.0;
  while (f(a) < 0.0) a -= 2.0;
  while (f(b) > 0.0) b += 2.0;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, a, b, boost::math::tools::eps_tolerance<double>(50), iters);
  return std::exp(0.5 * (r.first + r.second));
}

double weighted_lp(std::span<const double> norms, std::span<const double> weights, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) s += weights[i] * std::pow(norms[i], p);
  return std::pow(s, 1.0 / p);
}

double power_complementary(double p, double t) {
  // Maximizer s* = (t/p)^{1/(p-1)}.
  const double s = std::pow(t / p, 1.0 / (p - 1.0));
  return s * t - std::pow(s, p);
}

}  // namespace bdglab::oracle
