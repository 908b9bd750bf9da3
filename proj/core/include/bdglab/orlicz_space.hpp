#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bdglab/gauge.hpp"

namespace bdglab {

// Finite atomic measure space: atoms with strictly positive weights.
class DiscreteMeasureSpace {
 public:
  // Atoms named "0", "1", ...
  explicit DiscreteMeasureSpace(std::vector<double> weights);
  DiscreteMeasureSpace(std::vector<std::string> atoms, std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  double total_mass() const;

  bool operator==(const DiscreteMeasureSpace&) const = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<double> weights_;
};

// f : atoms -> R^d, stored atom-major.
class OrliczVector {
 public:
  OrliczVector(std::shared_ptr<const DiscreteMeasureSpace> space, std::size_t d, std::vector<double> values);
  static OrliczVector zeros(std::shared_ptr<const DiscreteMeasureSpace> space, std::size_t d);

  const DiscreteMeasureSpace& space() const { return *space_; }
  const std::shared_ptr<const DiscreteMeasureSpace>& space_ptr() const { return space_; }
  std::size_t d() const { return d_; }
  std::size_t atom_count() const { return space_->size(); }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t atom, std::size_t coord) const { return values_[atom * d_ + coord]; }
  std::span<const double> atom(std::size_t i) const { return {values_.data() + i * d_, d_}; }

  // Euclidean norm of each atom's value.
  std::vector<double> norms() const;

  OrliczVector scaled(double c) const;
  OrliczVector operator+(const OrliczVector& other) const;
  OrliczVector operator-(const OrliczVector& other) const;

 private:
  std::shared_ptr<const DiscreteMeasureSpace> space_;
  std::size_t d_;
  std::vector<double> values_;
};

// sum_i w_i L(n_i) with L(0) = 0. Throws GaugeOverflow on a non-finite term.
double modular_of_norms(std::span<const double> norms, std::span<const double> weights,
                        const GrowthFunction& gauge);
double modular(const OrliczVector& f, const GrowthFunction& gauge);

// inf{lambda > 0 : [f/lambda] <= 1}. Log-space bisection on the
// nonincreasing map lambda -> [f/lambda], bracketed from max_i n_i; the
// returned point satisfies [f/lambda*] <= 1 and, for continuous gauges,
// [f/lambda*] >= 1 - tol. Returns 0 for f = 0. Throws BracketExhausted when
// the modular never exceeds 1 (bounded gauges).
double luxemburg_norm_of_norms(std::span<const double> norms, std::span<const double> weights,
                               const GrowthFunction& gauge, double tol = 1e-12);
double luxemburg_norm(const OrliczVector& f, const GrowthFunction& gauge, double tol = 1e-12);

// Coordinates iid N(0,1), each atom scaled by 10^U with U uniform on
// [log10_lo, log10_hi].
OrliczVector random_orlicz_vector(std::shared_ptr<const DiscreteMeasureSpace> space, std::size_t d,
                                  std::uint64_t seed, std::uint64_t index, double log10_lo = -3.0,
                                  double log10_hi = 3.0);

struct RelationReport {
  std::size_t samples = 0;
  // min over samples of phi(||f||) - [f], relative to max(1, [f]).
  double upper_margin = 0.0;
  // min over samples of varphi([f]) - ||f||, relative to max(1, ||f||).
  double lower_margin = 0.0;
  // max over consecutive pairs of ||f + g|| / (||f|| + ||g||).
  double gamma_hat = 0.0;
  // smallest 2^(k/8) with 2 phi(2/alpha) <= 1.
  double alpha = 0.0;
  double tol = 1e-6;

  bool holds() const { return upper_margin >= -tol && lower_margin >= -tol && gamma_hat <= alpha * (1.0 + tol); }
};

RelationReport verify_norm_relations(std::shared_ptr<const DiscreteMeasureSpace> space,
                                     const GrowthFunction& gauge, std::size_t sample_count,
                                     std::uint64_t seed, std::size_t d = 3);

// CSV with header atom_id,coord_index,value.
void write_vector_csv(std::ostream& out, const OrliczVector& f);
OrliczVector read_vector_csv(std::istream& in, std::shared_ptr<const DiscreteMeasureSpace> space);

}  // namespace bdglab
