#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bdglab/gauge.hpp"
#include "bdglab/orlicz_space.hpp"
#include "bdglab/paths.hpp"
#include "bdglab/stats.hpp"

namespace bdglab {

// Simulation happens on n * refine steps; the coarse resolution observes the
// same paths every refine-th point, so both resolutions share one driver.
struct GridPlan {
  double horizon = 1.0;
  std::size_t n = 256;
  std::size_t refine = 4;
};

struct McConfig {
  std::size_t replicates = 100000;
  std::uint64_t seed = 12345;
};

inline GaugeSpec power_spec(double p) {
  GaugeSpec s;
  s.family = GaugeFamily::power;
  s.p = p;
  return s;
}

// Canonical "key=value" rendering used in report params.
std::string param(const std::string& key, double value);
std::string param(const std::string& key, const std::string& value);

// ---- quasi-metrics -------------------------------------------------------

enum class QuasiMetricKind { absolute, modular };

// rho(x, y) = |x - y| (gamma 1) or [x - y]_L (gamma = phi_L(2)).
class QuasiMetric {
 public:
  static QuasiMetric absolute();
  static QuasiMetric modular(const GrowthFunction& gauge);

  QuasiMetricKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  const std::optional<GrowthFunction>& gauge() const { return gauge_; }

  double operator()(double x, double y) const;
  double operator()(const OrliczVector& f, const OrliczVector& g) const;

 private:
  QuasiMetric(QuasiMetricKind kind, double gamma, std::optional<GrowthFunction> gauge)
      : kind_(kind), gamma_(gamma), gauge_(std::move(gauge)) {}
  QuasiMetricKind kind_;
  double gamma_;
  std::optional<GrowthFunction> gauge_;
};

struct QuasiMetricAudit {
  std::size_t triples = 0;
  double symmetry_defect = 0.0;  // max |rho(x,y) - rho(y,x)|
  double identity_defect = 0.0;  // max rho(x,x)
  // max of (rho(x,z) - gamma (rho(x,y) + rho(y,z))) / max(1, rho(x,z))
  double triangle_excess = 0.0;
  bool holds(double tol = 1e-9) const {
    return symmetry_defect == 0.0 && identity_defect == 0.0 && triangle_excess <= tol;
  }
};

// Random triples: reals for the absolute metric, Orlicz vectors on `space`
// for the modular one.
QuasiMetricAudit audit_quasi_metric(const QuasiMetric& rho, std::shared_ptr<const DiscreteMeasureSpace> space,
                                    std::size_t triples, std::uint64_t seed, std::size_t d = 2);

// ---- good lambda ---------------------------------------------------------

struct GoodLambdaConfig {
  std::string experiment = "good_lambda";
  // Capped first exit of |B| from [-1, 1].
  StoppingTimeSpec stop{StoppingTimeSpec::Kind::first_hit_sup, 1.0, HitMode::weak, 4.0};
  GridPlan grid{4.0, 1024, 4};
  std::vector<double> betas{1.5, 2.0, 4.0};
  std::vector<double> deltas{0.05, 0.1, 0.25};
  std::vector<double> lambdas{0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.5};
  McConfig mc;
};

// delta^2 / (beta - 1)^2 for line 1, delta^2 / (beta^2 - 1) for line 2.
double good_lambda_bound(int line, double beta, double delta);

// With X = sup_{t<=tau} |B_t| and Y = tau^{1/2}, per lambda and resolution:
//   line 1: P(X > beta lambda, Y < delta lambda) <= c1 P(X > lambda)
//   line 2: P(Y > beta lambda, X < delta lambda) <= c2 P(Y > lambda)
// Throws std::invalid_argument on an empty lambda grid, beta <= 1 or
// delta <= 0.
std::vector<RatioReport> estimate_good_lambda(const GoodLambdaConfig& cfg);

// C = delta^-p / (beta^-p - c_delta). Throws std::domain_error when
// c_delta >= beta^-p.
double derive_moment_constant(double beta, double delta, double c_delta, double p);

// E X^p <= C E Y^p for the line-1 constant of each feasible (beta, delta).
std::vector<RatioReport> moment_constant_check(const GoodLambdaConfig& cfg, double p = 2.0);

// ---- scalar BDG ----------------------------------------------------------

// "B" for the first Brownian coordinate, else a suite integrand on a
// single atom.
struct BdgConfig {
  std::string experiment = "bdg_ratio";
  std::string martingale = "B";
  std::size_t blocks = 0;  // elementary blocks; 0 means one per coarse step
  GaugeSpec phi = power_spec(1.0);
  StoppingTimeSpec stop{};
  GridPlan grid{1.0, 256, 4};
  std::vector<double> scales{0.5, 1.0, 2.0};
  McConfig mc;
};

// Forward rows E sup Phi(|cM|^2) vs E Phi(c^2 <M>_tau) and their reverse,
// per scale and resolution, plus a homogeneity row per scale. <M> is the
// predictable bracket int ||X||^2 dt. For Phi(t) = t the forward bound is 4
// and the reverse bound 1 (discrete Doob bracket).
std::vector<RatioReport> bdg_ratio(const BdgConfig& cfg);

// ---- Doob-Orlicz ---------------------------------------------------------

enum class PairKind { identity, dominated, doob };
std::string to_string(PairKind kind);
PairKind parse_pair_kind(const std::string& name);

struct DoobOrliczConfig {
  std::string experiment = "doob_orlicz";
  PairKind pair = PairKind::doob;
  GaugeSpec lambda = power_spec(2.0);
  std::string martingale = "B";
  GridPlan grid{1.0, 256, 4};
  std::vector<double> audit_lambdas{0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
  double refinement_tolerance = 0.10;
  McConfig mc;
};

// Hypothesis audit P(xi >= l) <= E(eta 1{xi >= l}) / l on the lambda grid
// (pointwise for the dominated pair), then, only when the audit passes, the
// conclusion rows E L(xi) vs E L(eta), E L(xi / (2 (1 + kappa))) <= E L(eta)
// and the n-vs-refined stability row. Throws ClassPreconditionError when the
// gauge is not (equivalent to) an A2 gauge.
std::vector<RatioReport> doob_orlicz_check(const DoobOrliczConfig& cfg);

// ---- abstract maximal inequality -----------------------------------------

struct LenglartConfig {
  std::string experiment = "lenglart";
  QuasiMetricKind metric = QuasiMetricKind::absolute;
  std::string integrand = "B";
  GaugeSpec lambda = power_spec(2.0);  // modular metric only
  std::vector<double> weights{1.0, 1.0, 2.0, 0.5};
  GaugeSpec phi = power_spec(1.0);
  double q = 2.0;
  double kappa = 1.0;
  GridPlan grid{2.0, 256, 1};  // single resolution; refine is ignored
  std::vector<double> horizons{0.5, 1.0, 2.0};
  std::vector<double> scales{0.5, 1.0, 2.0};
  double audit_level = 0.5;
  double stability_factor = 10.0;
  McConfig mc{20000, 12345};
};

// Certified instantiations only:
//   absolute: xi = M (B or a bounded suite integral), q = 2, N = <M>^{1/2};
//   modular:  xi = the Orlicz-valued integral, q = 1, N = [<X>^{1/2}]_L.
// Audits the hypothesis at tau' = first time rho(xi, xi_0) >= audit_level,
// then reports E sup Phi(rho(xi_t, xi_0)) vs E Phi(N_tau) across the
// horizon and scaling sweeps with a max/min stability row. Throws
// std::invalid_argument for an uncertified pairing.
std::vector<RatioReport> lenglart_check(const LenglartConfig& cfg);

// ---- Orlicz-valued BDG ---------------------------------------------------

struct OrliczBdgConfig {
  std::string experiment = "orlicz_bdg";
  GaugeSpec lambda = power_spec(2.0);
  GaugeSpec phi = power_spec(1.0);
  std::vector<double> weights{1.0, 1.0, 2.0, 0.5};
  std::size_t d = 2;
  std::vector<std::string> integrands{"two_coord_mix", "B1_times_e1"};
  std::size_t blocks = 8;
  std::vector<double> horizons{0.5, 1.0, 2.0};
  std::vector<double> scales{0.5, 1.0, 2.0};
  GridPlan grid{2.0, 256, 4};
  double stability_factor = 10.0;
  double refinement_tolerance = 0.15;
  McConfig mc{20000, 12345};
};

// Forward: E Phi(sup_t [I_t]_L) vs E Phi([<X>_tau^{1/2}]_L); reverse when L
// is (equivalent to) an A2 gauge. Sweep and refinement stability rows per
// integrand and direction; for power gauges an extra row compares the
// Luxemburg norm with modular^{1/p}. Throws ClassPreconditionError when L
// is not A1.
std::vector<RatioReport> orlicz_bdg_check(const OrliczBdgConfig& cfg);

}  // namespace bdglab
