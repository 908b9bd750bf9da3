#include "bdglab/orlicz_space.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "bdglab/csv.hpp"
#include "bdglab/errors.hpp"
#include "bdglab/gauge_analysis.hpp"
#include "bdglab/random.hpp"

namespace bdglab {

namespace {

std::vector<std::string> default_atom_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return names;
}

}  // namespace

DiscreteMeasureSpace::DiscreteMeasureSpace(std::vector<double> weights)
    : DiscreteMeasureSpace(default_atom_names(weights.size()), weights) {}

DiscreteMeasureSpace::DiscreteMeasureSpace(std::vector<std::string> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("measure space needs at least one atom");
  if (atoms_.size() != weights_.size()) {
    throw std::invalid_argument("measure space atom and weight counts differ");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("measure space weights must be positive");
  }
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms_) {
    if (!seen.insert(a).second) throw std::invalid_argument("duplicate atom identifier '" + a + "'");
  }
}

double DiscreteMeasureSpace::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

OrliczVector::OrliczVector(std::shared_ptr<const DiscreteMeasureSpace> space, std::size_t d,
                           std::vector<double> values)
    : space_(std::move(space)), d_(d), values_(std::move(values)) {
  if (!space_) throw std::invalid_argument("OrliczVector needs a measure space");
  if (d_ == 0) throw std::invalid_argument("OrliczVector needs d >= 1");
  if (values_.size() != space_->size() * d_) {
    throw std::invalid_argument("OrliczVector value count does not match atoms x d");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("OrliczVector values must be finite");
  }
}

OrliczVector OrliczVector::zeros(std::shared_ptr<const DiscreteMeasureSpace> space, std::size_t d) {
  const std::size_t n = space->size() * d;
  return {std::move(space), d, std::vector<double>(n, 0.0)};
}

std::vector<double> OrliczVector::norms() const {
  std::vector<double> out(atom_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (double v : atom(i)) s += v * v;
    out[i] = std::sqrt(s);
  }
  return out;
}

OrliczVector OrliczVector::scaled(double c) const {
  auto v = values_;
  for (double& x : v) x *= c;
  return {space_, d_, std::move(v)};
}

OrliczVector OrliczVector::operator+(const OrliczVector& other) const {
  if (*other.space_ != *space_ || other.d_ != d_) throw std::invalid_argument("OrliczVector shape mismatch");
  auto v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return {space_, d_, std::move(v)};
}

OrliczVector OrliczVector::operator-(const OrliczVector& other) const { return *this + other.scaled(-1.0); }

double modular_of_norms(std::span<const double> norms, std::span<const double> weights,
                        const GrowthFunction& gauge) {
  double sum = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (norms[i] == 0.0) continue;
    const double term = weights[i] * gauge(norms[i]);
    if (!std::isfinite(term)) throw GaugeOverflow("modular term overflowed for " + gauge.name());
    sum += term;
  }
  return sum;
}

double modular(const OrliczVector& f, const GrowthFunction& gauge) {
  const auto n = f.norms();
  return modular_of_norms(n, f.space().weights(), gauge);
}

double luxemburg_norm_of_norms(std::span<const double> norms, std::span<const double> weights,
                               const GrowthFunction& gauge, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("luxemburg_norm requires tol > 0");
  const double nmax = norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
  if (nmax == 0.0) return 0.0;

  const auto m = [&](double lam) {
    double sum = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i) {
      if (norms[i] > 0.0) sum += weights[i] * gauge(norms[i] / lam);
    }
    return sum;
  };

  double hi = nmax;
  while (m(hi) > 1.0) {
    hi *= 2.0;
    if (hi > nmax * 1e200) throw BracketExhausted("luxemburg_norm: modular stays above 1");
  }
  double lo = hi;
  while (m(lo) <= 1.0) {
    hi = lo;
    lo *= 0.5;
    if (lo < nmax * 1e-200) {
      throw BracketExhausted("luxemburg_norm: modular of " + gauge.name() + " never exceeds 1");
    }
  }
  for (int iter = 0; iter < 200 && hi / lo - 1.0 > 4e-16; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (m(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo - 1.0 < 1e-13 && m(hi) >= 1.0 - tol) break;
  }
  return hi;
}

double luxemburg_norm(const OrliczVector& f, const GrowthFunction& gauge, double tol) {
  const auto n = f.norms();
  return luxemburg_norm_of_norms(n, f.space().weights(), gauge, tol);
}

OrliczVector random_orlicz_vector(std::shared_ptr<const DiscreteMeasureSpace> space, std::size_t d,
                                  std::uint64_t seed, std::uint64_t index, double log10_lo,
                                  double log10_hi) {
  const std::uint64_t key = derive_key(seed, "orlicz_vector");
  std::vector<double> values(space->size() * d);
  for (std::size_t i = 0; i < space->size(); ++i) {
    CounterRng rng(key, index, static_cast<std::uint32_t>(i));
    const double mag = std::pow(10.0, log10_lo + (log10_hi - log10_lo) * rng.uniform());
    for (std::size_t j = 0; j < d; ++j) values[i * d + j] = mag * rng.normal();
  }
  return {std::move(space), d, std::move(values)};
}

RelationReport verify_norm_relations(std::shared_ptr<const DiscreteMeasureSpace> space,
                                     const GrowthFunction& gauge, std::size_t sample_count,
                                     std::uint64_t seed, std::size_t d) {
  if (sample_count < 1) throw std::invalid_argument("verify_norm_relations needs sample_count >= 1");
  RelationReport rep;
  rep.samples = sample_count;
  rep.upper_margin = std::numeric_limits<double>::infinity();
  rep.lower_margin = std::numeric_limits<double>::infinity();

  for (int k = 0; k < 400; ++k) {
    const double a = std::exp2(k / 8.0);
    if (2.0 * phi_of(gauge, 2.0 / a) <= 1.0) {
      rep.alpha = a;
      break;
    }
  }
  if (rep.alpha == 0.0) rep.alpha = std::numeric_limits<double>::infinity();

  std::vector<OrliczVector> samples;
  samples.reserve(sample_count);
  for (std::size_t k = 0; k < sample_count; ++k) {
    samples.push_back(random_orlicz_vector(space, d, seed, k));
    const auto& f = samples.back();
    const double mod = modular(f, gauge);
    const double norm = luxemburg_norm(f, gauge);
    if (norm == 0.0) {
      rep.upper_margin = std::min(rep.upper_margin, -mod);
      rep.lower_margin = std::min(rep.lower_margin, 0.0);
      continue;
    }
    rep.upper_margin = std::min(rep.upper_margin, (phi_of(gauge, norm) - mod) / std::max(1.0, mod));
    const double inner = psi_of(gauge, 1.0 / mod);
    const double varphi = inner > 0.0 ? 1.0 / inner : std::numeric_limits<double>::infinity();
    rep.lower_margin = std::min(rep.lower_margin, (varphi - norm) / std::max(1.0, norm));
  }
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const double a = luxemburg_norm(samples[k], gauge);
    const double b = luxemburg_norm(samples[k + 1], gauge);
    const double s = luxemburg_norm(samples[k] + samples[k + 1], gauge);
    if (a + b > 0.0) rep.gamma_hat = std::max(rep.gamma_hat, s / (a + b));
  }
  return rep;
}

void write_vector_csv(std::ostream& out, const OrliczVector& f) {
  out << "atom_id,coord_index,value\n";
  for (std::size_t i = 0; i < f.atom_count(); ++i) {
    for (std::size_t j = 0; j < f.d(); ++j) {
      out << f.space().atoms()[i] << ',' << j << ',' << format_double(f.value(i, j)) << '\n';
    }
  }
}

OrliczVector read_vector_csv(std::istream& in, std::shared_ptr<const DiscreteMeasureSpace> space) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"atom_id", "coord_index", "value"}) {
    throw std::invalid_argument("vector CSV must start with header atom_id,coord_index,value");
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < space->size(); ++i) index.emplace(space->atoms()[i], i);

  struct Entry {
    std::size_t atom;
    std::size_t coord;
    double value;
  };
  std::vector<Entry> entries;
  std::size_t d = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw std::invalid_argument("vector CSV line " + std::to_string(lineno) + ": expected 3 fields");
    const auto it = index.find(fields[0]);
    if (it == index.end()) throw std::invalid_argument("vector CSV: unknown atom '" + fields[0] + "'");
    const std::size_t coord = std::stoul(fields[1]);
    entries.push_back({it->second, coord, std::stod(fields[2])});
    d = std::max(d, coord + 1);
  }
  if (d == 0) throw std::invalid_argument("vector CSV has no entries");
  std::vector<double> values(space->size() * d, 0.0);
  for (const auto& e : entries) values[e.atom * d + e.coord] = e.value;
  return {std::move(space), d, std::move(values)};
}

}  // namespace bdglab
