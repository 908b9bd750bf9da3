#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace bdglab {

// Uniform grid t_k = k dt on [0, T], k = 0..n.
class PathGrid {
 public:
  PathGrid(double horizon, std::size_t steps);

  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  double dt() const { return dt_; }
  double time(std::size_t k) const { return static_cast<double>(k) * dt_; }
  // Grid index of time t; throws std::invalid_argument when t is not within
  // 1e-9 steps of a grid point or lies outside [0, T].
  std::size_t index_of(double t) const;

  bool operator==(const PathGrid&) const = default;

 private:
  double horizon_;
  std::size_t steps_;
  double dt_;
};

// d independent discrete Brownian paths on a grid, coordinate-major.
class BrownianBundle {
 public:
  BrownianBundle(PathGrid grid, std::size_t d, std::vector<double> samples, std::uint64_t key = 0,
                 std::uint64_t replicate = 0);

  const PathGrid& grid() const { return grid_; }
  std::size_t d() const { return d_; }
  std::uint64_t key() const { return key_; }
  std::uint64_t replicate() const { return replicate_; }
  double at(std::size_t coord, std::size_t k) const { return samples_[coord * (grid_.steps() + 1) + k]; }
  std::span<const double> path(std::size_t coord) const {
    return {samples_.data() + coord * (grid_.steps() + 1), grid_.steps() + 1};
  }
  const std::vector<double>& samples() const { return samples_; }

  // Every factor-th grid point; the coarse paths are the fine ones observed
  // on the coarse grid, so coarse and fine results share one driver.
  BrownianBundle coarsen(std::size_t factor) const;
  BrownianBundle scaled(double c) const;

 private:
  PathGrid grid_;
  std::size_t d_;
  std::vector<double> samples_;
  std::uint64_t key_;
  std::uint64_t replicate_;
};

// Replicate `replicate` of the stream `key`: coordinate j draws its n
// increments from CounterRng(key, replicate, j). Throws on d == 0.
BrownianBundle simulate_bundle(std::uint64_t key, std::uint64_t replicate, std::size_t d, const PathGrid& grid);

// Same, with the stream key derived from (root_seed, tag).
BrownianBundle simulate_bundle(std::uint64_t root_seed, std::string_view tag, std::uint64_t replicate,
                               std::size_t d, const PathGrid& grid);

struct PathFunctionals {
  std::vector<double> running_sup;          // max_{j<=k} |path[j]|
  std::vector<double> quadratic_variation;  // sum_{j<k} (path[j+1]-path[j])^2
};

// Throws std::invalid_argument when path.size() != n + 1.
PathFunctionals path_functionals(std::span<const double> path, const PathGrid& grid);

enum class HitMode { weak, strict };

// Smallest k with process[k] >= level (weak) or > level (strict); the last
// index (the horizon) when never hit.
std::size_t hitting_time(std::span<const double> process, double level, HitMode mode);

struct StoppingTimeSpec {
  enum class Kind {
    deterministic,   // t = horizon
    first_hit_sup,   // first k with running sup of |M| reaching level
    first_exceed,    // first k with N above level
    norm_threshold,  // first k with the triple norm above level (tau_R)
  };
  Kind kind = Kind::deterministic;
  double level = 0.0;
  HitMode mode = HitMode::weak;
  // Cap for the path-dependent kinds and the time of the deterministic
  // one; <= 0 means the grid horizon.
  double horizon = 0.0;

  bool operator==(const StoppingTimeSpec&) const = default;
};

std::string_view to_string(StoppingTimeSpec::Kind kind);
StoppingTimeSpec::Kind parse_stop_kind(std::string_view name);

// Grid index of the stopping time. `process` is the observed process the
// spec refers to (|M|, N or the triple-norm path); ignored for deterministic
// stopping.
std::size_t resolve_stopping_time(const StoppingTimeSpec& spec, std::span<const double> process,
                                  const PathGrid& grid);

// Rows replicate,coordinate,k,value; header when `header` is set.
void write_bundle_csv(std::ostream& out, const BrownianBundle& bundle, bool header);

}  // namespace bdglab
