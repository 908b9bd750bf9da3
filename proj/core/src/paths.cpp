#include "bdglab/paths.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bdglab/csv.hpp"
#include "bdglab/random.hpp"

namespace bdglab {

PathGrid::PathGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps), dt_(0.0) {
  if (steps_ == 0) throw std::invalid_argument("path grid needs at least one step");
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw std::invalid_argument("path grid horizon must be positive");
  dt_ = horizon_ / static_cast<double>(steps_);
}

std::size_t PathGrid::index_of(double t) const {
  const double k = t / dt_;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9 || r < 0.0 || r > static_cast<double>(steps_)) {
    throw std::invalid_argument("time " + std::to_string(t) + " is not a grid point (dt = " +
                                std::to_string(dt_) + ")");
  }
  return static_cast<std::size_t>(r);
}

BrownianBundle::BrownianBundle(PathGrid grid, std::size_t d, std::vector<double> samples, std::uint64_t key,
                               std::uint64_t replicate)
    : grid_(grid), d_(d), samples_(std::move(samples)), key_(key), replicate_(replicate) {
  if (d_ == 0) throw std::invalid_argument("bundle needs d >= 1");
  if (samples_.size() != d_ * (grid_.steps() + 1)) throw std::invalid_argument("bundle sample count mismatch");
}

BrownianBundle BrownianBundle::coarsen(std::size_t factor) const {
  if (factor == 0 || grid_.steps() % factor != 0) {
    throw std::invalid_argument("coarsening factor must divide the step count");
  }
  const PathGrid coarse(grid_.horizon(), grid_.steps() / factor);
  std::vector<double> out(d_ * (coarse.steps() + 1));
  for (std::size_t j = 0; j < d_; ++j) {
    for (std::size_t k = 0; k <= coarse.steps(); ++k) out[j * (coarse.steps() + 1) + k] = at(j, k * factor);
  }
  return {coarse, d_, std::move(out), key_, replicate_};
}

BrownianBundle BrownianBundle::scaled(double c) const {
  auto s = samples_;
  for (double& x : s) x *= c;
  return {grid_, d_, std::move(s), key_, replicate_};
}

BrownianBundle simulate_bundle(std::uint64_t key, std::uint64_t replicate, std::size_t d, const PathGrid& grid) {
  if (d == 0) throw std::invalid_argument("simulate_bundle needs d >= 1");
  const std::size_t n = grid.steps();
  const double sd = std::sqrt(grid.dt());
  std::vector<double> samples(d * (n + 1));
  for (std::size_t j = 0; j < d; ++j) {
    CounterRng rng(key, replicate, static_cast<std::uint32_t>(j));
    double* row = samples.data() + j * (n + 1);
    row[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) row[k + 1] = row[k] + sd * rng.normal();
  }
  return {grid, d, std::move(samples), key, replicate};
}

BrownianBundle simulate_bundle(std::uint64_t root_seed, std::string_view tag, std::uint64_t replicate,
                               std::size_t d, const PathGrid& grid) {
  return simulate_bundle(derive_key(root_seed, tag), replicate, d, grid);
}

PathFunctionals path_functionals(std::span<const double> path, const PathGrid& grid) {
  if (path.size() != grid.steps() + 1) throw std::invalid_argument("path length must be n + 1");
  PathFunctionals out;
  out.running_sup.resize(path.size());
  out.quadratic_variation.resize(path.size());
  double sup = 0.0;
  double qv = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    sup = std::max(sup, std::abs(path[k]));
    out.running_sup[k] = sup;
    if (k > 0) {
      const double inc = path[k] - path[k - 1];
      qv += inc * inc;
    }
    out.quadratic_variation[k] = qv;
  }
  return out;
}

std::size_t hitting_time(std::span<const double> process, double level, HitMode mode) {
  for (std::size_t k = 0; k < process.size(); ++k) {
    if (mode == HitMode::weak ? process[k] >= level : process[k] > level) return k;
  }
  return process.empty() ? 0 : process.size() - 1;
}

std::string_view to_string(StoppingTimeSpec::Kind kind) {
  switch (kind) {
    case StoppingTimeSpec::Kind::deterministic: return "deterministic";
    case StoppingTimeSpec::Kind::first_hit_sup: return "first_hit_sup";
    case StoppingTimeSpec::Kind::first_exceed: return "first_exceed";
    case StoppingTimeSpec::Kind::norm_threshold: return "norm_threshold";
  }
  return "unknown";
}

StoppingTimeSpec::Kind parse_stop_kind(std::string_view name) {
  if (name == "deterministic") return StoppingTimeSpec::Kind::deterministic;
  if (name == "first_hit_sup") return StoppingTimeSpec::Kind::first_hit_sup;
  if (name == "first_exceed") return StoppingTimeSpec::Kind::first_exceed;
  if (name == "norm_threshold") return StoppingTimeSpec::Kind::norm_threshold;
  throw std::invalid_argument("unknown stopping time kind '" + std::string(name) + "'");
}

std::size_t resolve_stopping_time(const StoppingTimeSpec& spec, std::span<const double> process,
                                  const PathGrid& grid) {
  if (spec.level < 0.0) throw std::invalid_argument("stopping level must be nonnegative");
  const std::size_t cap = spec.horizon > 0.0 ? grid.index_of(std::min(spec.horizon, grid.horizon())) : grid.steps();
  if (spec.kind == StoppingTimeSpec::Kind::deterministic) return cap;
  if (process.size() != grid.steps() + 1) throw std::invalid_argument("stopping process length must be n + 1");
  const std::size_t hit = hitting_time(process.first(cap + 1), spec.level, spec.mode);
  return std::min(hit, cap);
}

void write_bundle_csv(std::ostream& out, const BrownianBundle& bundle, bool header) {
  if (header) out << "replicate,coordinate,k,value\n";
  for (std::size_t j = 0; j < bundle.d(); ++j) {
    for (std::size_t k = 0; k <= bundle.grid().steps(); ++k) {
      out << bundle.replicate() << ',' << j << ',' << k << ',' << format_double(bundle.at(j, k)) << '\n';
    }
  }
}

}  // namespace bdglab
