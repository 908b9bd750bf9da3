#include "bdglab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bdglab {

void ScalarMoments::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void ScalarMoments::merge(const ScalarMoments& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  n_ += o.n_;
}

double ScalarMoments::variance() const { return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1); }

McEstimate ScalarMoments::estimate() const {
  return {mean_, n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_)), n_};
}

void PairMoments::add(double x, double y) {
  ++n_;
  const double n = static_cast<double>(n_);
  const double dx = x - mx_;
  const double dy = y - my_;
  mx_ += dx / n;
  my_ += dy / n;
  cxx_ += dx * (x - mx_);
  cyy_ += dy * (y - my_);
  cxy_ += dx * (y - my_);
}

void PairMoments::merge(const PairMoments& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double dx = o.mx_ - mx_;
  const double dy = o.my_ - my_;
  const double w = na * nb / n;
  mx_ += dx * nb / n;
  my_ += dy * nb / n;
  cxx_ += o.cxx_ + dx * dx * w;
  cyy_ += o.cyy_ + dy * dy * w;
  cxy_ += o.cxy_ + dx * dy * w;
  n_ += o.n_;
}

double PairMoments::var_x() const { return n_ < 2 ? 0.0 : cxx_ / static_cast<double>(n_ - 1); }
double PairMoments::var_y() const { return n_ < 2 ? 0.0 : cyy_ / static_cast<double>(n_ - 1); }
double PairMoments::cov() const { return n_ < 2 ? 0.0 : cxy_ / static_cast<double>(n_ - 1); }

McEstimate PairMoments::x() const {
  return {mx_, n_ < 2 ? 0.0 : std::sqrt(var_x() / static_cast<double>(n_)), n_};
}

McEstimate PairMoments::y() const {
  return {my_, n_ < 2 ? 0.0 : std::sqrt(var_y() / static_cast<double>(n_)), n_};
}

McEstimate PairMoments::linear(double a, double b) const {
  const double var = a * a * var_x() + b * b * var_y() + 2.0 * a * b * cov();
  return {a * mx_ + b * my_, n_ < 2 ? 0.0 : std::sqrt(std::max(var, 0.0) / static_cast<double>(n_)), n_};
}

bool verdict_holds(const RatioReport& r) {
  if (r.degenerate) return true;
  if (!r.bound) return r.pass;
  return r.lhs.mean <= *r.bound * r.rhs.mean + 3.0 * r.combined_stderr;
}

RatioReport make_ratio_report(std::string experiment, std::string params, std::string anchor,
                              const PairMoments& m, std::optional<double> bound, std::size_t grid_n) {
  RatioReport r;
  r.experiment = std::move(experiment);
  r.params = std::move(params);
  r.anchor = std::move(anchor);
  r.lhs = m.x();
  r.rhs = m.y();
  r.bound = bound;
  r.grid_n = grid_n;
  r.degenerate = r.lhs.mean == 0.0 && r.rhs.mean == 0.0 && m.var_x() == 0.0 && m.var_y() == 0.0;
  if (r.degenerate) {
    r.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.ratio = r.rhs.mean != 0.0 ? r.lhs.mean / r.rhs.mean : std::numeric_limits<double>::infinity();
    if (r.rhs.mean != 0.0 && m.count() >= 2) {
      const double q = r.ratio;
      const double var = m.var_x() - 2.0 * q * m.cov() + q * q * m.var_y();
      r.ratio_stderr = std::sqrt(std::max(var, 0.0) / static_cast<double>(m.count())) / std::abs(r.rhs.mean);
    }
  }
  if (bound) {
    r.combined_stderr = m.linear(1.0, -*bound).std_error;
  } else {
    r.combined_stderr = std::sqrt(r.lhs.std_error * r.lhs.std_error + r.rhs.std_error * r.rhs.std_error);
  }
  r.pass = true;
  r.pass = verdict_holds(r);
  return r;
}

RatioReport make_exact_report(std::string experiment, std::string params, std::string anchor, double lhs,
                              double rhs, std::optional<double> bound, std::size_t grid_n) {
  RatioReport r;
  r.experiment = std::move(experiment);
  r.params = std::move(params);
  r.anchor = std::move(anchor);
  r.lhs = {lhs, 0.0, 1};
  r.rhs = {rhs, 0.0, 1};
  r.bound = bound;
  r.grid_n = grid_n;
  r.degenerate = lhs == 0.0 && rhs == 0.0;
  if (r.degenerate) {
    r.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.ratio = rhs != 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
  }
  r.pass = true;
  r.pass = verdict_holds(r);
  return r;
}

}  // namespace bdglab
