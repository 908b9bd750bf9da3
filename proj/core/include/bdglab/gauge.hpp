#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bdglab {

// Growth-function families. `complementary` is produced by
// complementary_gauge() and is not constructible from a spec.
enum class GaugeFamily { power, power_log, lambda_alpha, exp_minus_one, table, complementary };

std::string_view to_string(GaugeFamily family);

// Throws std::invalid_argument("unknown gauge family '<name>'") on an
// unrecognized tag.
GaugeFamily parse_family(std::string_view name);

// Parameters of a gauge as they appear in experiment configs.
//
//   power          scale * t^p                   (p > 0, scale > 0)
//   power_log      t^p * log(e + t)              (p > 0)
//   lambda_alpha   t^alpha * min(1/log(1/t), 1)  (alpha >= 0)
//   exp_minus_one  e^t - 1
//   table          log-linear interpolation of (t, value) knots
struct GaugeSpec {
  GaugeFamily family = GaugeFamily::power;
  double p = 2.0;
  double scale = 1.0;
  double alpha = 1.0;
  std::vector<std::pair<double, double>> knots;
  double domain_floor = 1e-8;

  bool operator==(const GaugeSpec&) const = default;
};

// Closed-form companions, populated for families that admit them.
struct ClosedForms {
  std::function<double(double)> phi;     // sup_t L(st)/L(t)
  std::function<double(double)> psi;     // generalized inverse of phi
  std::function<double(double)> varphi;  // 1 / psi(1/t)
  std::optional<GaugeSpec> complementary;
  std::optional<double> kappa;
};

// Evaluation backend of a gauge. Implementations must be immutable.
class GaugeModel {
 public:
  virtual ~GaugeModel() = default;
  // Value at t > 0.
  virtual double value(double t) const = 0;
  // Right derivative at t >= 0 (limit value at 0).
  virtual double right_derivative(double t) const = 0;
  virtual std::string name() const = 0;
};

// A gauge L: (0, inf) -> (0, inf), extended by L(0) = 0.
//
// Values are immutable and cheap to copy; all copies share one model, so a
// GrowthFunction may be used from several threads at once.
class GrowthFunction {
 public:
  GrowthFunction(std::shared_ptr<const GaugeModel> model, GaugeFamily family,
                 std::optional<GaugeSpec> spec, std::optional<ClosedForms> closed_forms,
                 double domain_floor);

  double operator()(double t) const { return t > 0.0 ? model_->value(t) : 0.0; }
  double right_derivative(double t) const { return model_->right_derivative(t < 0.0 ? 0.0 : t); }

  GaugeFamily family() const { return family_; }
  // Absent for gauges that were derived numerically (complementary).
  const std::optional<GaugeSpec>& spec() const { return spec_; }
  const std::optional<ClosedForms>& closed_forms() const { return closed_forms_; }
  double domain_floor() const { return domain_floor_; }
  std::string name() const { return model_->name(); }

 private:
  std::shared_ptr<const GaugeModel> model_;
  GaugeFamily family_;
  std::optional<GaugeSpec> spec_;
  std::optional<ClosedForms> closed_forms_;
  double domain_floor_;
};

// Validates `spec` and builds the gauge. Throws std::invalid_argument on
// out-of-range parameters (e.g. power with p <= 0).
GrowthFunction make_gauge(const GaugeSpec& spec);

// Shorthands.
GrowthFunction power_gauge(double p, double scale = 1.0);
GrowthFunction lambda_alpha_gauge(double alpha);
GrowthFunction power_log_gauge(double p);
GrowthFunction exp_minus_one_gauge();

struct NamedGauge {
  std::string name;
  std::string formula;
  GaugeSpec spec;
};

// The gauges exercised by the verification suite, in a fixed order.
const std::vector<NamedGauge>& gauge_registry();

}  // namespace bdglab
