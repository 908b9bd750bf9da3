#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bdglab/gauge.hpp"

namespace bdglab {

// Selects between a family's closed forms and the numeric algorithms.
// Tests force `numeric` to compare the two.
enum class TransformRoute { closed_form_if_available, numeric };

// phi(s) = sup_{t>0} L(st)/L(t).
//
// Numeric route: geometric grid over [floor, 1/floor] (256 points per
// decade), then repeated 33-point zooms around the running argmax until the
// bracket is below 1e-13 relative width. Points with L(t) = 0 are skipped.
// Throws std::invalid_argument for s <= 0 and GaugeOverflow when the probe
// hits a non-finite value.
double phi_of(const GrowthFunction& gauge, double s,
              TransformRoute route = TransformRoute::closed_form_if_available);

// psi(t) = inf{s >= 0 : phi(s) >= t} by log-space bisection on s -> phi(s),
// returning the upper bracket end. Throws BracketExhausted when phi stays
// below t up to s = 1e150.
double psi_of(const GrowthFunction& gauge, double t,
              TransformRoute route = TransformRoute::closed_form_if_available);

struct InverseTransforms {
  double psi;     // inf{s >= 0 : phi(s) >= t}
  double varphi;  // 1 / psi(1/t); +inf when psi(1/t) = 0
};

InverseTransforms inverse_transforms(const GrowthFunction& gauge, double t,
                                     TransformRoute route = TransformRoute::closed_form_if_available);

// Right inverse of the right derivative a = L'_+: inf{s >= 0 : a(s) > u}.
// Bisection assumes a nondecreasing, i.e. an N-function.
double right_inverse_derivative(const GrowthFunction& gauge, double u);

struct NFunctionProbe {
  bool convex = false;
  bool vanishes_at_zero = false;  // L(t)/t -> 0
  bool explodes_at_inf = false;   // L(t)/t -> inf
  std::string diagnostic;

  bool ok() const { return convex && vanishes_at_zero && explodes_at_inf; }
};

// Secant-slope convexity probe plus the two limit checks, on a geometric
// grid over [t_min, t_max].
NFunctionProbe probe_n_function(const GrowthFunction& gauge, double t_min = 1e-8, double t_max = 1e8);

// Complementary N-function int_0^t a~(u) du. Uses the closed form when the
// family has one, otherwise adaptive Gauss-Kronrod quadrature of the
// bisected right inverse. Throws ClassPreconditionError when the gauge fails
// probe_n_function().
GrowthFunction complementary_gauge(const GrowthFunction& gauge,
                                   TransformRoute route = TransformRoute::closed_form_if_available);

// L(s) + L~(t) - s t; nonnegative for a complementary pair.
double young_gap(const GrowthFunction& gauge, const GrowthFunction& complementary, double s, double t);

struct ProbeConfig {
  double t_min = 1e-8;
  double t_max = 1e8;
  int points_per_decade = 16;
  std::vector<double> lambdas{2.0, 4.0, 8.0};
  std::vector<double> s_grid{1e-1, 1e-2, 1e-3, 1e-4};
  // t-values over which the kappa ratio is maximized.
  double kappa_t_min = 1e-6;
  double kappa_t_max = 1e6;
  int kappa_points_per_decade = 4;
};

// Empirical class membership. Flags are probe results, not proofs; the
// probe configuration is echoed in the report.
struct GaugeClassReport {
  ProbeConfig probe;

  bool is_A0 = false;
  // Worst-case c_lambda = max_t L(lambda t)/L(t), one entry per probe lambda.
  std::vector<std::pair<double, double>> c_lambda;

  bool is_A1 = false;
  // sup_t L(st)/L(t) at each probe s (same order as probe.s_grid).
  std::vector<double> phi_at_s;
  double phi_at_smallest_s = 0.0;

  bool is_N_function = false;
  NFunctionProbe n_function;

  // max_t int_0^1 L(st)/s^2 ds / L(t); present whenever the integral
  // converged for an A1 gauge.
  std::optional<double> kappa_integral;
  // kappa_integral, reported only for N-functions (the A2 constant).
  std::optional<double> kappa_A2;

  // Log-log slope near the floor and its drift against a point a decade up.
  std::optional<double> rv_index;
  double rv_residual = 0.0;

  // max L/L^ where L^ is the greatest convex minorant on the probe grid;
  // 1 for convex gauges.
  double convex_equivalence = 1.0;

  std::string diagnostic;

  bool is_A2() const { return kappa_A2.has_value(); }
  // A1 with a converged kappa and within `max_gap` of its convex minorant,
  // which itself passes the N-function limit checks. Such gauges are
  // two-sided equivalent to an A2 gauge.
  bool is_A2_equivalent(double max_gap = 2.0) const;
};

GaugeClassReport classify_gauge(const GrowthFunction& gauge, const ProbeConfig& cfg = {});

}  // namespace bdglab
