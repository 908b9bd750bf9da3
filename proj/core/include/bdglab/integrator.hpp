#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bdglab/gauge.hpp"
#include "bdglab/orlicz_space.hpp"
#include "bdglab/paths.hpp"

namespace bdglab {

// Read access to a bundle truncated at grid index `limit`. Reading a later
// index throws AdaptednessError; this is how rules are kept adapted.
class History {
 public:
  History(const BrownianBundle& bundle, std::size_t limit) : bundle_(&bundle), limit_(limit) {}

  double at(std::size_t coord, std::size_t k) const;
  std::size_t limit() const { return limit_; }
  std::size_t d() const { return bundle_->d(); }
  const PathGrid& grid() const { return bundle_->grid(); }

 private:
  const BrownianBundle* bundle_;
  std::size_t limit_;
};

struct RuleContext {
  std::size_t atom;
  std::size_t atom_count;
  std::size_t k;  // grid index the value is attached to
  const History& history;
};

// Writes the R^d value of the integrand at (atom, k) into `out` (zeroed).
using ProcessRule = std::function<void(const RuleContext&, std::span<double>)>;

enum class ProcessKind { elementary, grid_adapted };

struct ProcessSpec {
  std::string name;
  ProcessKind kind = ProcessKind::grid_adapted;
  std::vector<std::size_t> support;  // nonzero coordinates
  std::optional<double> bound;       // uniform bound on the value norm
  // Elementary only: s_0 = 0 < s_1 < ... ; the last block runs to the horizon.
  std::vector<double> breakpoints;
  ProcessRule rule;
};

// Integrand values at the left grid points t_0..t_{n-1}, stored
// [atom][k][coord].
class GridProcess {
 public:
  GridProcess(PathGrid grid, std::size_t atoms, std::size_t d);
  GridProcess(PathGrid grid, std::size_t atoms, std::size_t d, std::vector<double> values);

  const PathGrid& grid() const { return grid_; }
  std::size_t atoms() const { return atoms_; }
  std::size_t d() const { return d_; }
  std::span<double> at(std::size_t atom, std::size_t k) {
    return {values_.data() + (atom * grid_.steps() + k) * d_, d_};
  }
  std::span<const double> at(std::size_t atom, std::size_t k) const {
    return {values_.data() + (atom * grid_.steps() + k) * d_, d_};
  }
  // Left-point values of one atom, [k][coord].
  std::span<const double> atom_path(std::size_t atom) const {
    return {values_.data() + atom * grid_.steps() * d_, grid_.steps() * d_};
  }
  double norm_sq(std::size_t atom, std::size_t k) const;
  const std::vector<double>& values() const { return values_; }

  GridProcess scaled(double c) const;
  // X 1_[sigma, inf): zero before grid index sigma.
  GridProcess started_at(std::size_t sigma) const;

 private:
  PathGrid grid_;
  std::size_t atoms_;
  std::size_t d_;
  std::vector<double> values_;
};

// a X + b Y on a shared grid.
GridProcess combine(double a, const GridProcess& x, double b, const GridProcess& y);

struct ElementaryProcess {
  PathGrid grid;
  std::size_t atoms;
  std::size_t d;
  std::vector<std::size_t> breaks;  // s_0..s_m as grid indices, then n
  std::vector<double> xi;           // [atom][block][coord]
  std::optional<double> bound;

  std::size_t blocks() const { return breaks.size() - 1; }
  std::span<const double> value(std::size_t atom, std::size_t block) const {
    return {xi.data() + (atom * blocks() + block) * d, d};
  }
  GridProcess to_grid() const;
};

// Realizes the block values; xi_i is computed from History(bundle, s_i).
// Throws std::invalid_argument on a misaligned or unordered breakpoint, a
// support outside the bundle, or a value exceeding the declared bound;
// AdaptednessError when a rule reads past s_i.
ElementaryProcess make_elementary(const ProcessSpec& spec, const BrownianBundle& bundle,
                                  const DiscreteMeasureSpace& space);

// Any spec as left-point grid values (elementary specs go through
// make_elementary()).
GridProcess realize(const ProcessSpec& spec, const BrownianBundle& bundle, const DiscreteMeasureSpace& space);

// Per-atom integral and eta^X = int_0^t ||X_s||^2 ds on grid points 0..n,
// stored [atom][k].
struct IntegralProcess {
  PathGrid grid;
  std::size_t atoms;
  std::vector<double> integral;
  std::vector<double> eta;

  std::span<const double> integral_path(std::size_t atom) const {
    return {integral.data() + atom * (grid.steps() + 1), grid.steps() + 1};
  }
  std::span<const double> eta_path(std::size_t atom) const {
    return {eta.data() + atom * (grid.steps() + 1), grid.steps() + 1};
  }
};

// Elementary: the exact double sum sum_i sum_j xi_i^j (B^j_{t^s_{i+1}} - B^j_{t^s_i}).
IntegralProcess ito_integral(const ElementaryProcess& x, const BrownianBundle& bundle);
// Grid-adapted: the left-point sum; eta by the left Riemann sum.
IntegralProcess ito_integral(const GridProcess& x, const BrownianBundle& bundle);
IntegralProcess ito_integral(const ProcessSpec& spec, const BrownianBundle& bundle,
                             const DiscreteMeasureSpace& space);

// Triple norm t -> [(eta_t)^{1/2}]_L on grid points 0..n.
std::vector<double> triple_norm_path(const IntegralProcess& ip, const DiscreteMeasureSpace& space,
                                     const GrowthFunction& gauge);

struct EtaTripleNorm {
  std::vector<double> eta;     // [atom][k], k = 0..n
  std::vector<double> triple;  // k = 0..n
};

EtaTripleNorm eta_and_triple_norm(const GridProcess& x, const DiscreteMeasureSpace& space,
                                  const GrowthFunction& gauge);

// J^m on left-point values f ([k][coord], n*d entries): zero on the first
// block of length 1/m, then each block carries the previous block's average
// m * dt * sum f. Throws std::invalid_argument unless 1/m is a whole number
// of steps dividing n.
std::vector<double> coarsen_Jm(std::span<const double> f, std::size_t d, std::size_t m, const PathGrid& grid);
GridProcess coarsen_Jm(const GridProcess& x, std::size_t m);

// sqrt(dt sum_k ||f_k - g_k||^2).
double l2_time_distance(std::span<const double> f, std::span<const double> g, std::size_t d, const PathGrid& grid);

// dt sum_{i<k} ||f_i||^2 for k = 0..n.
std::vector<double> prefix_energy(std::span<const double> f, std::size_t d, const PathGrid& grid);

// chi_n(s): 1 for s <= n-1, 0 for s > n, linear in between.
double truncation_weight(double norm, std::size_t n);

// X^n = 1_{U_n} X chi_n(||X||). U_n defaults to the first n atoms.
ProcessSpec truncate_process(const ProcessSpec& spec, std::size_t n,
                             std::optional<std::vector<std::size_t>> atoms_subset = std::nullopt);

// Integrand suite: constant_e1, sign_of_B1, B1_times_e1, two_coord_mix.
// `blocks` is the number of elementary blocks of sign_of_B1/two_coord_mix
// on [0, horizon]. sign(0) is taken as +1.
ProcessSpec suite_integrand(std::string_view name, double horizon, std::size_t blocks = 8);
const std::vector<std::string>& suite_integrand_names();

// Rows replicate,atom,k,value; header when `header` is set.
void write_integral_csv(std::ostream& out, std::uint64_t replicate, const IntegralProcess& ip, bool header);

}  // namespace bdglab
