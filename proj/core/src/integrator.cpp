#include "bdglab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bdglab/csv.hpp"
#include "bdglab/errors.hpp"

namespace bdglab {

namespace {

double sign_plus(double x) { return x < 0.0 ? -1.0 : 1.0; }

double norm_sq_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void check_support(const ProcessSpec& spec, std::span<const double> v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0.0 && std::find(spec.support.begin(), spec.support.end(), j) == spec.support.end()) {
      throw std::invalid_argument("integrand '" + spec.name + "' wrote coordinate " + std::to_string(j) +
                                  " outside its support");
    }
  }
  if (spec.bound && std::sqrt(norm_sq_of(v)) > *spec.bound * (1.0 + 1e-12)) {
    throw std::invalid_argument("integrand '" + spec.name + "' exceeded its declared bound");
  }
}

void check_dimensions(const ProcessSpec& spec, const BrownianBundle& bundle) {
  for (std::size_t j : spec.support) {
    if (j >= bundle.d()) {
      throw std::invalid_argument("integrand '" + spec.name + "' needs coordinate " + std::to_string(j) +
                                  " but the bundle has d = " + std::to_string(bundle.d()));
    }
  }
  if (!spec.rule) throw std::invalid_argument("integrand '" + spec.name + "' has no rule");
}

}  // namespace

double History::at(std::size_t coord, std::size_t k) const {
  if (k > limit_) {
    throw AdaptednessError("read of grid index " + std::to_string(k) + " beyond history limit " +
                           std::to_string(limit_));
  }
  if (coord >= bundle_->d()) throw AdaptednessError("read of coordinate " + std::to_string(coord) + " beyond d");
  return bundle_->at(coord, k);
}

GridProcess::GridProcess(PathGrid grid, std::size_t atoms, std::size_t d)
    : GridProcess(grid, atoms, d, std::vector<double>(atoms * grid.steps() * d, 0.0)) {}

GridProcess::GridProcess(PathGrid grid, std::size_t atoms, std::size_t d, std::vector<double> values)
    : grid_(grid), atoms_(atoms), d_(d), values_(std::move(values)) {
  if (values_.size() != atoms_ * grid_.steps() * d_) throw std::invalid_argument("grid process size mismatch");
}

double GridProcess::norm_sq(std::size_t atom, std::size_t k) const { return norm_sq_of(at(atom, k)); }

GridProcess GridProcess::scaled(double c) const {
  auto v = values_;
  for (double& x : v) x *= c;
  return {grid_, atoms_, d_, std::move(v)};
}

GridProcess GridProcess::started_at(std::size_t sigma) const {
  GridProcess out(grid_, atoms_, d_);
  for (std::size_t a = 0; a < atoms_; ++a) {
    for (std::size_t k = sigma; k < grid_.steps(); ++k) {
      const auto src = at(a, k);
      std::copy(src.begin(), src.end(), out.at(a, k).begin());
    }
  }
  return out;
}

GridProcess combine(double a, const GridProcess& x, double b, const GridProcess& y) {
  if (!(x.grid() == y.grid()) || x.atoms() != y.atoms() || x.d() != y.d()) {
    throw std::invalid_argument("combine: process shapes differ");
  }
  std::vector<double> v(x.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x.values()[i] + b * y.values()[i];
  return {x.grid(), x.atoms(), x.d(), std::move(v)};
}

GridProcess ElementaryProcess::to_grid() const {
  GridProcess out(grid, atoms, d);
  for (std::size_t a = 0; a < atoms; ++a) {
    for (std::size_t i = 0; i < blocks(); ++i) {
      const auto v = value(a, i);
      for (std::size_t k = breaks[i]; k < breaks[i + 1]; ++k) std::copy(v.begin(), v.end(), out.at(a, k).begin());
    }
  }
  return out;
}

ElementaryProcess make_elementary(const ProcessSpec& spec, const BrownianBundle& bundle,
                                  const DiscreteMeasureSpace& space) {
  if (spec.kind != ProcessKind::elementary) {
    throw std::invalid_argument("integrand '" + spec.name + "' is not elementary");
  }
  check_dimensions(spec, bundle);
  const PathGrid& grid = bundle.grid();
  if (spec.breakpoints.empty() || spec.breakpoints.front() != 0.0) {
    throw std::invalid_argument("elementary breakpoints must start at 0");
  }

  ElementaryProcess ep{grid, space.size(), bundle.d(), {}, {}, spec.bound};
  for (double s : spec.breakpoints) {
    std::size_t k = 0;
    try {
      k = grid.index_of(s);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("breakpoint " + std::to_string(s) + " is not aligned with the grid (dt = " +
                                  std::to_string(grid.dt()) + ")");
    }
    if (!ep.breaks.empty() && k <= ep.breaks.back()) {
      throw std::invalid_argument("elementary breakpoints must increase strictly on the grid");
    }
    if (k >= grid.steps()) throw std::invalid_argument("breakpoint at or beyond the horizon");
    ep.breaks.push_back(k);
  }
  ep.breaks.push_back(grid.steps());

  ep.xi.assign(space.size() * ep.blocks() * ep.d, 0.0);
  for (std::size_t i = 0; i < ep.blocks(); ++i) {
    const History history(bundle, ep.breaks[i]);
    for (std::size_t a = 0; a < space.size(); ++a) {
      std::span<double> out{ep.xi.data() + (a * ep.blocks() + i) * ep.d, ep.d};
      spec.rule({a, space.size(), ep.breaks[i], history}, out);
      check_support(spec, out);
    }
  }
  return ep;
}

GridProcess realize(const ProcessSpec& spec, const BrownianBundle& bundle, const DiscreteMeasureSpace& space) {
  if (spec.kind == ProcessKind::elementary) return make_elementary(spec, bundle, space).to_grid();
  check_dimensions(spec, bundle);
  GridProcess out(bundle.grid(), space.size(), bundle.d());
  for (std::size_t k = 0; k < bundle.grid().steps(); ++k) {
    const History history(bundle, k);
    for (std::size_t a = 0; a < space.size(); ++a) {
      auto v = out.at(a, k);
      spec.rule({a, space.size(), k, history}, v);
      check_support(spec, v);
    }
  }
  return out;
}

IntegralProcess ito_integral(const ElementaryProcess& x, const BrownianBundle& bundle) {
  if (!(x.grid == bundle.grid()) || x.d > bundle.d()) throw std::invalid_argument("ito_integral: dimension mismatch");
  const std::size_t n = x.grid.steps();
  const double dt = x.grid.dt();
  IntegralProcess ip{x.grid, x.atoms, std::vector<double>(x.atoms * (n + 1)), std::vector<double>(x.atoms * (n + 1))};
  for (std::size_t a = 0; a < x.atoms; ++a) {
    double* integral = ip.integral.data() + a * (n + 1);
    double* eta = ip.eta.data() + a * (n + 1);
    double base = 0.0;
    double base_eta = 0.0;
    for (std::size_t i = 0; i < x.blocks(); ++i) {
      const auto xi = x.value(a, i);
      const double energy = norm_sq_of(xi);
      const std::size_t s = x.breaks[i];
      for (std::size_t k = s + (i == 0 ? 0 : 1); k <= x.breaks[i + 1]; ++k) {
        double inc = 0.0;
        for (std::size_t j = 0; j < x.d; ++j) {
          if (xi[j] != 0.0) inc += xi[j] * (bundle.at(j, k) - bundle.at(j, s));
        }
        integral[k] = base + inc;
        eta[k] = base_eta + energy * (static_cast<double>(k - s) * dt);
      }
      base = integral[x.breaks[i + 1]];
      base_eta = eta[x.breaks[i + 1]];
    }
  }
  return ip;
}

IntegralProcess ito_integral(const GridProcess& x, const BrownianBundle& bundle) {
  if (!(x.grid() == bundle.grid()) || x.d() > bundle.d()) {
    throw std::invalid_argument("ito_integral: dimension mismatch");
  }
  const std::size_t n = x.grid().steps();
  const double dt = x.grid().dt();
  IntegralProcess ip{x.grid(), x.atoms(), std::vector<double>(x.atoms() * (n + 1)),
                     std::vector<double>(x.atoms() * (n + 1))};
  for (std::size_t a = 0; a < x.atoms(); ++a) {
    double* integral = ip.integral.data() + a * (n + 1);
    double* eta = ip.eta.data() + a * (n + 1);
    double sum = 0.0;
    double energy = 0.0;
    integral[0] = 0.0;
    eta[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = x.at(a, k);
      for (std::size_t j = 0; j < x.d(); ++j) {
        if (v[j] != 0.0) sum += v[j] * (bundle.at(j, k + 1) - bundle.at(j, k));
      }
      energy += norm_sq_of(v);
      integral[k + 1] = sum;
      eta[k + 1] = dt * energy;
    }
  }
  return ip;
}

IntegralProcess ito_integral(const ProcessSpec& spec, const BrownianBundle& bundle,
                             const DiscreteMeasureSpace& space) {
  if (spec.kind == ProcessKind::elementary) return ito_integral(make_elementary(spec, bundle, space), bundle);
  return ito_integral(realize(spec, bundle, space), bundle);
}

std::vector<double> triple_norm_path(const IntegralProcess& ip, const DiscreteMeasureSpace& space,
                                     const GrowthFunction& gauge) {
  if (ip.atoms != space.size()) throw std::invalid_argument("triple_norm_path: atom count mismatch");
  const std::size_t n = ip.grid.steps();
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t a = 0; a < ip.atoms; ++a) {
      const double e = ip.eta[a * (n + 1) + k];
      if (e > 0.0) s += space.weights()[a] * gauge(std::sqrt(e));
    }
    out[k] = s;
  }
  return out;
}

EtaTripleNorm eta_and_triple_norm(const GridProcess& x, const DiscreteMeasureSpace& space,
                                  const GrowthFunction& gauge) {
  if (x.atoms() != space.size()) throw std::invalid_argument("eta_and_triple_norm: atom count mismatch");
  const std::size_t n = x.grid().steps();
  const double dt = x.grid().dt();
  EtaTripleNorm out{std::vector<double>(x.atoms() * (n + 1), 0.0), {}};
  for (std::size_t a = 0; a < x.atoms(); ++a) {
    double energy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      energy += x.norm_sq(a, k);
      out.eta[a * (n + 1) + k + 1] = dt * energy;
    }
  }
  IntegralProcess shell{x.grid(), x.atoms(), {}, out.eta};
  out.triple = triple_norm_path(shell, space, gauge);
  return out;
}

std::vector<double> coarsen_Jm(std::span<const double> f, std::size_t d, std::size_t m, const PathGrid& grid) {
  const std::size_t n = grid.steps();
  if (d == 0 || f.size() != n * d) throw std::invalid_argument("coarsen_Jm: input must hold n * d values");
  if (m == 0) throw std::invalid_argument("coarsen_Jm: m must be positive");
  const double steps = 1.0 / (static_cast<double>(m) * grid.dt());
  const double rounded = std::round(steps);
  if (rounded < 1.0 || std::abs(steps - rounded) > 1e-9 * rounded) {
    throw std::invalid_argument("coarsen_Jm: block length 1/m is not a whole number of grid steps");
  }
  const auto b = static_cast<std::size_t>(rounded);
  if (n % b != 0) throw std::invalid_argument("coarsen_Jm: blocks of length 1/m do not tile the grid");

  std::vector<double> out(n * d, 0.0);
  std::vector<long double> acc(d);
  for (std::size_t start = 0; start + b < n; start += b) {
    std::fill(acc.begin(), acc.end(), 0.0L);
    for (std::size_t k = start; k < start + b; ++k) {
      for (std::size_t j = 0; j < d; ++j) acc[j] += f[k * d + j];
    }
    for (std::size_t j = 0; j < d; ++j) {
      const auto avg = static_cast<double>(acc[j] / static_cast<long double>(b));
      for (std::size_t k = start + b; k < start + 2 * b; ++k) out[k * d + j] = avg;
    }
  }
  return out;
}

GridProcess coarsen_Jm(const GridProcess& x, std::size_t m) {
  GridProcess out(x.grid(), x.atoms(), x.d());
  for (std::size_t a = 0; a < x.atoms(); ++a) {
    const auto c = coarsen_Jm(x.atom_path(a), x.d(), m, x.grid());
    std::copy(c.begin(), c.end(), out.at(a, 0).data());
  }
  return out;
}

double l2_time_distance(std::span<const double> f, std::span<const double> g, std::size_t d, const PathGrid& grid) {
  if (f.size() != grid.steps() * d || g.size() != f.size()) {
    throw std::invalid_argument("l2_time_distance: inputs must hold n * d values");
  }
  long double s = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const long double diff = static_cast<long double>(f[i]) - g[i];
    s += diff * diff;
  }
  return std::sqrt(static_cast<double>(s * grid.dt()));
}

std::vector<double> prefix_energy(std::span<const double> f, std::size_t d, const PathGrid& grid) {
  if (f.size() != grid.steps() * d) throw std::invalid_argument("prefix_energy: input must hold n * d values");
  std::vector<double> out(grid.steps() + 1, 0.0);
  long double s = 0.0L;
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      const long double v = f[k * d + j];
      s += v * v;
    }
    out[k + 1] = static_cast<double>(s * grid.dt());
  }
  return out;
}

double truncation_weight(double norm, std::size_t n) {
  const double nn = static_cast<double>(n);
  if (norm <= nn - 1.0) return 1.0;
  if (norm > nn) return 0.0;
  return nn - norm;
}

ProcessSpec truncate_process(const ProcessSpec& spec, std::size_t n,
                             std::optional<std::vector<std::size_t>> atoms_subset) {
  if (n == 0) throw std::invalid_argument("truncate_process: n must be positive");
  ProcessSpec out = spec;
  out.name = spec.name + "|trunc" + std::to_string(n);
  out.bound = spec.bound ? std::min(*spec.bound, static_cast<double>(n)) : static_cast<double>(n);
  auto inner = spec.rule;
  out.rule = [inner, n, subset = std::move(atoms_subset)](const RuleContext& ctx, std::span<double> v) {
    const bool member = subset ? std::find(subset->begin(), subset->end(), ctx.atom) != subset->end()
                               : ctx.atom < n;
    if (!member) return;
    inner(ctx, v);
    const double w = truncation_weight(std::sqrt(norm_sq_of(v)), n);
    for (double& x : v) x *= w;
  };
  return out;
}

ProcessSpec suite_integrand(std::string_view name, double horizon, std::size_t blocks) {
  if (!(horizon > 0.0)) throw std::invalid_argument("suite_integrand: horizon must be positive");
  if (blocks == 0) throw std::invalid_argument("suite_integrand: blocks must be positive");
  std::vector<double> breaks(blocks);
  for (std::size_t i = 0; i < blocks; ++i) breaks[i] = horizon * static_cast<double>(i) / static_cast<double>(blocks);

  ProcessSpec s;
  s.name = std::string(name);
  if (name == "constant_e1") {
    s.kind = ProcessKind::elementary;
    s.support = {0};
    s.bound = 1.0;
    s.breakpoints = {0.0};
    s.rule = [](const RuleContext&, std::span<double> v) { v[0] = 1.0; };
  } else if (name == "sign_of_B1") {
    s.kind = ProcessKind::elementary;
    s.support = {0};
    s.bound = 1.0;
    s.breakpoints = breaks;
    s.rule = [](const RuleContext& c, std::span<double> v) { v[0] = sign_plus(c.history.at(0, c.k)); };
  } else if (name == "B1_times_e1") {
    s.kind = ProcessKind::grid_adapted;
    s.support = {0};
    s.rule = [](const RuleContext& c, std::span<double> v) { v[0] = c.history.at(0, c.k); };
  } else if (name == "two_coord_mix") {
    s.kind = ProcessKind::elementary;
    s.support = {0, 1};
    s.bound = 1.0;
    s.breakpoints = breaks;
    s.rule = [](const RuleContext& c, std::span<double> v) {
      const double theta = (static_cast<double>(c.atom) + 0.5) * std::numbers::pi /
                           (2.0 * static_cast<double>(c.atom_count));
      v[0] = std::cos(theta) * sign_plus(c.history.at(0, c.k));
      v[1] = std::sin(theta) * std::tanh(2.0 * c.history.at(1, c.k));
    };
  } else {
    throw std::invalid_argument("unknown integrand '" + std::string(name) + "'");
  }
  return s;
}

const std::vector<std::string>& suite_integrand_names() {
  static const std::vector<std::string> names{"constant_e1", "sign_of_B1", "B1_times_e1", "two_coord_mix"};
  return names;
}

void write_integral_csv(std::ostream& out, std::uint64_t replicate, const IntegralProcess& ip, bool header) {
  if (header) out << "replicate,atom,k,value\n";
  for (std::size_t a = 0; a < ip.atoms; ++a) {
    const auto path = ip.integral_path(a);
    for (std::size_t k = 0; k < path.size(); ++k) {
      out << replicate << ',' << a << ',' << k << ',' << format_double(path[k]) << '\n';
    }
  }
}

}  // namespace bdglab
