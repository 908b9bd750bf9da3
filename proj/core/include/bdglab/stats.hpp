#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace bdglab {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
};

// Streaming mean/variance (Welford), mergeable (Chan et al.). Merging the
// same partial results in the same order is bit-reproducible.
class ScalarMoments {
 public:
  void add(double x);
  void merge(const ScalarMoments& other);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased; 0 for n < 2
  McEstimate estimate() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Paired moments of (x, y) on common random numbers.
class PairMoments {
 public:
  void add(double x, double y);
  void merge(const PairMoments& other);

  std::size_t count() const { return n_; }
  McEstimate x() const;
  McEstimate y() const;
  double var_x() const;
  double var_y() const;
  double cov() const;
  // Estimate of a x + b y with its paired standard error.
  McEstimate linear(double a, double b) const;

 private:
  std::size_t n_ = 0;
  double mx_ = 0.0;
  double my_ = 0.0;
  double cxx_ = 0.0;
  double cyy_ = 0.0;
  double cxy_ = 0.0;
};

// One inequality check lhs <= bound * rhs.
//
// Verdict rule (reproducible from the fields): when a bound is present,
//   pass  <=>  lhs.mean <= bound * rhs.mean + 3 * combined_stderr,
// where combined_stderr is the paired standard error of lhs - bound * rhs.
// Rows without a bound are informational and pass unless a caller marks
// them failed. Zero-zero rows are flagged degenerate (ratio NaN) and pass.
struct RatioReport {
  std::string experiment;
  std::string params;  // canonical "key=value;..." string
  std::string anchor;  // which inequality the row instantiates
  McEstimate lhs;
  McEstimate rhs;
  double ratio = 0.0;
  double ratio_stderr = 0.0;  // delta method
  std::optional<double> bound;
  double combined_stderr = 0.0;
  std::size_t grid_n = 0;
  bool degenerate = false;
  bool pass = true;
};

// Builds a report from paired moments, applying the verdict rule.
RatioReport make_ratio_report(std::string experiment, std::string params, std::string anchor,
                              const PairMoments& moments, std::optional<double> bound, std::size_t grid_n);

// Report for a deterministic (non-Monte-Carlo) quantity: std_error 0.
RatioReport make_exact_report(std::string experiment, std::string params, std::string anchor, double lhs,
                              double rhs, std::optional<double> bound, std::size_t grid_n = 0);

bool verdict_holds(const RatioReport& r);

}  // namespace bdglab
