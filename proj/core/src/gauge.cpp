#include "bdglab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bdglab {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

class PowerModel final : public GaugeModel {
 public:
  PowerModel(double p, double scale) : p_(p), scale_(scale) {}
  double value(double t) const override { return scale_ * std::pow(t, p_); }
  double right_derivative(double t) const override {
    if (t == 0.0) {
      if (p_ > 1.0) return 0.0;
      if (p_ == 1.0) return scale_;
      return std::numeric_limits<double>::infinity();
    }
    return scale_ * p_ * std::pow(t, p_ - 1.0);
  }
  std::string name() const override {
    std::string n = "power(p=" + format_param(p_);
    if (scale_ != 1.0) n += ",scale=" + format_param(scale_);
    return n + ")";
  }

 private:
  double p_;
  double scale_;
};

class PowerLogModel final : public GaugeModel {
 public:
  explicit PowerLogModel(double p) : p_(p) {}
  double value(double t) const override { return std::pow(t, p_) * std::log(std::numbers::e + t); }
  double right_derivative(double t) const override {
    if (t == 0.0) {
      if (p_ > 1.0) return 0.0;
      if (p_ == 1.0) return 1.0;
      return std::numeric_limits<double>::infinity();
    }
    return p_ * std::pow(t, p_ - 1.0) * std::log(std::numbers::e + t) +
           std::pow(t, p_) / (std::numbers::e + t);
  }
  std::string name() const override { return "power_log(p=" + format_param(p_) + ")"; }

 private:
  double p_;
};

// t^alpha * min(1/log(1/t), 1). The reciprocal-log factor is below one
// exactly when t < 1/e; from 1/e on (including t >= 1, where log(1/t) <= 0)
// the min branch is 1.
class LambdaAlphaModel final : public GaugeModel {
 public:
  explicit LambdaAlphaModel(double alpha) : alpha_(alpha) {}
  double value(double t) const override {
    const double power = std::pow(t, alpha_);
    if (t < kInvE) return power / -std::log(t);
    return power;
  }
  double right_derivative(double t) const override {
    if (t == 0.0) {
      if (alpha_ >= 1.0) return 0.0;
      return std::numeric_limits<double>::infinity();
    }
    if (t < kInvE) {
      const double l = -std::log(t);
      const double tp = std::pow(t, alpha_ - 1.0);
      return alpha_ * tp / l + tp / (l * l);
    }
    return alpha_ == 0.0 ? 0.0 : alpha_ * std::pow(t, alpha_ - 1.0);
  }
  std::string name() const override { return "lambda_alpha(alpha=" + format_param(alpha_) + ")"; }

 private:
  double alpha_;
};

class ExpMinusOneModel final : public GaugeModel {
 public:
  double value(double t) const override { return std::expm1(t); }
  double right_derivative(double t) const override { return std::exp(t); }
  std::string name() const override { return "exp_minus_one"; }
};

// Piecewise power law through the knots; the end segments extend to 0 and
// infinity with their own exponents.
class TableModel final : public GaugeModel {
 public:
  explicit TableModel(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    slopes_.reserve(knots_.size() - 1);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      slopes_.push_back(std::log(knots_[i + 1].second / knots_[i].second) /
                        std::log(knots_[i + 1].first / knots_[i].first));
    }
  }
  double value(double t) const override {
    const std::size_t i = segment(t);
    return knots_[i].second * std::pow(t / knots_[i].first, slopes_[i]);
  }
  double right_derivative(double t) const override {
    if (t == 0.0) {
      const double s = slopes_.front();
      if (s > 1.0) return 0.0;
      if (s == 1.0) return knots_.front().second / knots_.front().first;
      return std::numeric_limits<double>::infinity();
    }
    const std::size_t i = segment(t);
    return slopes_[i] * value(t) / t;
  }
  std::string name() const override { return "table(" + std::to_string(knots_.size()) + " knots)"; }

 private:
  // Segment whose half-open range [t_i, t_{i+1}) contains t.
  std::size_t segment(double t) const {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                     [](double v, const auto& k) { return v < k.first; });
    const auto idx = static_cast<std::size_t>(std::distance(knots_.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, slopes_.size() - 1);
  }

  std::vector<std::pair<double, double>> knots_;
  std::vector<double> slopes_;
};

ClosedForms power_closed_forms(double p, double scale) {
  ClosedForms cf;
  cf.phi = [p](double s) { return std::pow(s, p); };
  cf.psi = [p](double t) { return std::pow(t, 1.0 / p); };
  cf.varphi = [p](double t) { return std::pow(t, 1.0 / p); };
  if (p > 1.0) {
    const double q = p / (p - 1.0);
    GaugeSpec comp;
    comp.family = GaugeFamily::power;
    comp.p = q;
    comp.scale = 1.0 / (q * std::pow(scale * p, q - 1.0));
    cf.complementary = comp;
    cf.kappa = 1.0 / (p - 1.0);
  }
  return cf;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

std::string_view to_string(GaugeFamily family) {
  switch (family) {
    case GaugeFamily::power: return "power";
    case GaugeFamily::power_log: return "power_log";
    case GaugeFamily::lambda_alpha: return "lambda_alpha";
    case GaugeFamily::exp_minus_one: return "exp_minus_one";
    case GaugeFamily::table: return "table";
    case GaugeFamily::complementary: return "complementary";
  }
  return "unknown";
}

GaugeFamily parse_family(std::string_view name) {
  if (name == "power") return GaugeFamily::power;
  if (name == "power_log") return GaugeFamily::power_log;
  if (name == "lambda_alpha") return GaugeFamily::lambda_alpha;
  if (name == "exp_minus_one") return GaugeFamily::exp_minus_one;
  if (name == "table") return GaugeFamily::table;
  throw std::invalid_argument("unknown gauge family '" + std::string(name) + "'");
}

GrowthFunction::GrowthFunction(std::shared_ptr<const GaugeModel> model, GaugeFamily family,
                               std::optional<GaugeSpec> spec,
                               std::optional<ClosedForms> closed_forms, double domain_floor)
    : model_(std::move(model)),
      family_(family),
      spec_(std::move(spec)),
      closed_forms_(std::move(closed_forms)),
      domain_floor_(domain_floor) {
  if (!model_) throw std::invalid_argument("gauge model must not be null");
  if (!(domain_floor_ > 0.0 && domain_floor_ < 1.0)) {
    throw std::invalid_argument("gauge domain_floor must lie in (0, 1)");
  }
}

GrowthFunction make_gauge(const GaugeSpec& spec) {
  require(spec.domain_floor > 0.0 && spec.domain_floor < 1.0, "gauge domain_floor must lie in (0, 1)");
  switch (spec.family) {
    case GaugeFamily::power:
      require(spec.p > 0.0 && std::isfinite(spec.p), "power gauge requires p > 0");
      require(spec.scale > 0.0 && std::isfinite(spec.scale), "power gauge requires scale > 0");
      return {std::make_shared<PowerModel>(spec.p, spec.scale), spec.family, spec,
              power_closed_forms(spec.p, spec.scale), spec.domain_floor};
    case GaugeFamily::power_log:
      require(spec.p > 0.0 && std::isfinite(spec.p), "power_log gauge requires p > 0");
      return {std::make_shared<PowerLogModel>(spec.p), spec.family, spec, std::nullopt,
              spec.domain_floor};
    case GaugeFamily::lambda_alpha:
      require(spec.alpha >= 0.0 && std::isfinite(spec.alpha), "lambda_alpha gauge requires alpha >= 0");
      return {std::make_shared<LambdaAlphaModel>(spec.alpha), spec.family, spec, std::nullopt,
              spec.domain_floor};
    case GaugeFamily::exp_minus_one:
      return {std::make_shared<ExpMinusOneModel>(), spec.family, spec, std::nullopt, spec.domain_floor};
    case GaugeFamily::table: {
      require(spec.knots.size() >= 2, "table gauge requires at least two knots");
      for (std::size_t i = 0; i < spec.knots.size(); ++i) {
        const auto [t, v] = spec.knots[i];
        require(t > 0.0 && v > 0.0 && std::isfinite(t) && std::isfinite(v),
                "table gauge knots must be positive and finite");
        if (i > 0) {
          require(t > spec.knots[i - 1].first, "table gauge knot abscissae must increase strictly");
          require(v >= spec.knots[i - 1].second, "table gauge knot values must be nondecreasing");
        }
      }
      return {std::make_shared<TableModel>(spec.knots), spec.family, spec, std::nullopt,
              spec.domain_floor};
    }
    case GaugeFamily::complementary:
      break;
  }
  throw std::invalid_argument("gauge family '" + std::string(to_string(spec.family)) +
                              "' cannot be built from a spec");
}

GrowthFunction power_gauge(double p, double scale) {
  GaugeSpec s;
  s.family = GaugeFamily::power;
  s.p = p;
  s.scale = scale;
  return make_gauge(s);
}

GrowthFunction lambda_alpha_gauge(double alpha) {
  GaugeSpec s;
  s.family = GaugeFamily::lambda_alpha;
  s.alpha = alpha;
  return make_gauge(s);
}

GrowthFunction power_log_gauge(double p) {
  GaugeSpec s;
  s.family = GaugeFamily::power_log;
  s.p = p;
  return make_gauge(s);
}

GrowthFunction exp_minus_one_gauge() {
  GaugeSpec s;
  s.family = GaugeFamily::exp_minus_one;
  return make_gauge(s);
}

const std::vector<NamedGauge>& gauge_registry() {
  static const std::vector<NamedGauge> registry = [] {
    std::vector<NamedGauge> r;
    auto power = [](double p, double scale) {
      GaugeSpec s;
      s.family = GaugeFamily::power;
      s.p = p;
      s.scale = scale;
      return s;
    };
    auto lambda = [](double alpha) {
      GaugeSpec s;
      s.family = GaugeFamily::lambda_alpha;
      s.alpha = alpha;
      return s;
    };
    GaugeSpec plog;
    plog.family = GaugeFamily::power_log;
    plog.p = 2.0;
    GaugeSpec expm1;
    expm1.family = GaugeFamily::exp_minus_one;

    r.push_back({"power_1.5", "t^1.5", power(1.5, 1.0)});
    r.push_back({"power_2", "t^2", power(2.0, 1.0)});
    r.push_back({"power_3", "t^3", power(3.0, 1.0)});
    r.push_back({"half_square", "t^2/2", power(2.0, 0.5)});
    r.push_back({"cube_third", "t^3/3", power(3.0, 1.0 / 3.0)});
    r.push_back({"power_log_2", "t^2 log(e+t)", plog});
    r.push_back({"lambda_0", "min(1/log(1/t), 1)", lambda(0.0)});
    r.push_back({"lambda_1", "t min(1/log(1/t), 1)", lambda(1.0)});
    r.push_back({"lambda_2", "t^2 min(1/log(1/t), 1)", lambda(2.0)});
    r.push_back({"exp_minus_one", "e^t - 1", expm1});
    return r;
  }();
  return registry;
}

}  // namespace bdglab
