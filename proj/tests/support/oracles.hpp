#pragma once

#include <functional>
#include <span>

// Reference computations for the tests. Each one uses a different algorithm
// from the library routine it checks (dense scans, Brent, TOMS 748,
// tanh-sinh), so agreement is evidence rather than self-consistency.
namespace bdglab::oracle {

using Fn = std::function<double(double)>;

// sup_t L(st)/L(t): dense log grid on [lo, hi] then Brent on the best cell.
double phi_scan(const Fn& L, double s, double lo = 1e-6, double hi = 1e6, int per_decade = 400);

// inf{s >= 0 : f(s) >= t} for nondecreasing f, bracketed on [lo, hi].
double generalized_inverse(const Fn& f, double t, double lo = 1e-12, double hi = 1e12);

// Legendre transform sup_{s >= 0} (s t - L(s)) for convex L.
double legendre(const Fn& L, double t);

// inf{s : a(s) > u} read off a uniform scan of a on [0, hi] with `points`
// points; exact up to hi / points.
double right_inverse_scan(const Fn& a, double u, double hi, std::size_t points);

// int_0^1 L(st)/s^2 ds / L(t).
double kappa_ratio(const Fn& L, double t);

// Root of lambda -> sum_i w_i L(n_i / lambda) - 1.
double luxemburg_root(std::span<const double> norms, std::span<const double> weights, const Fn& L);

// (sum_i w_i n_i^p)^{1/p}.
double weighted_lp(std::span<const double> norms, std::span<const double> weights, double p);

// Closed forms for L = t^p.
double power_complementary(double p, double t);  // sup_s (s t - s^p)
inline double conjugate_exponent(double p) { return p / (p - 1.0); }

}  // namespace bdglab::oracle
