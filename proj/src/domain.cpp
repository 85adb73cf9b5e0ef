#include "exlearn/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "exlearn/errors.hpp"

namespace exlearn {

namespace {

constexpr double kSumTolerance = 1e-9;

// Validates a probability vector and divides it by its total.
bool normalize_probabilities(std::vector<double>& p, const char* what) {
  if (p.empty()) throw DomainError(std::string(what) + ": empty probability vector");
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError(std::string(what) + ": probabilities must be finite and nonnegative");
    }
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw DomainError(std::string(what) + ": probabilities sum to " + std::to_string(total) +
                      ", expected 1");
  }
  if (total == 1.0) return false;
  for (double& v : p) v /= total;
  return true;
}

}  // namespace

DomainGrid::DomainGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("grid must contain at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw DomainError("grid points must be finite");
    if (i > 0 && !(points_[i - 1] < points_[i])) {
      throw DomainError("grid points must be strictly increasing");
    }
  }
}

std::optional<std::size_t> DomainGrid::find(double x) const noexcept {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it == points_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

std::size_t DomainGrid::index_of(double x) const {
  if (auto i = find(x)) return *i;
  throw OffGrid("value " + std::to_string(x) + " is not a grid point");
}

GridPtr make_grid(std::vector<double> points) {
  return std::make_shared<const DomainGrid>(std::move(points));
}

GridPtr integer_grid(int first, int last) {
  if (last < first) throw DomainError("integer_grid: empty range");
  std::vector<double> pts;
  for (int v = first; v <= last; ++v) pts.push_back(v);
  return make_grid(std::move(pts));
}

Pmf::Pmf(GridPtr grid, std::vector<double> probs) : grid_(std::move(grid)), probs_(std::move(probs)) {
  if (!grid_) throw DomainError("pmf requires a grid");
  if (probs_.size() != grid_->size()) {
    throw DomainError("pmf has " + std::to_string(probs_.size()) + " probabilities for " +
                      std::to_string(grid_->size()) + " grid points");
  }
  renormalized_ = normalize_probabilities(probs_, "pmf");
}

Pmf Pmf::point_mass(GridPtr grid, double x) {
  const std::size_t at = grid->index_of(x);
  std::vector<double> p(grid->size(), 0.0);
  p[at] = 1.0;
  return Pmf(std::move(grid), std::move(p));
}

Pmf Pmf::uniform(GridPtr grid) {
  const auto n = grid->size();
  return Pmf(std::move(grid), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli: p outside [0,1]");
  static const GridPtr kBinary = make_grid({0.0, 1.0});
  return Pmf(kBinary, {1.0 - p, p});
}

std::optional<std::size_t> Pmf::atom() const noexcept {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] == 0.0) continue;
    if (found || probs_[i] != 1.0) return std::nullopt;
    found = i;
  }
  return found;
}

FiniteMixture::FiniteMixture(std::vector<Pmf> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  if (components_.empty()) throw DomainError("mixture needs at least one component");
  if (components_.size() != weights_.size()) {
    throw DomainError("mixture has " + std::to_string(weights_.size()) + " weights for " +
                      std::to_string(components_.size()) + " components");
  }
  for (const auto& c : components_) {
    if (c.grid_ptr() != grid_ptr() && !(c.grid() == grid())) {
      throw DomainError("mixture components must share one grid");
    }
  }
  normalize_probabilities(weights_, "mixture weights");
}

Pmf FiniteMixture::marginal() const {
  if (size() == 1) return components_.front();
  std::vector<double> p(grid().size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t x = 0; x < p.size(); ++x) p[x] += weights_[i] * components_[i].prob(x);
  }
  return Pmf(grid_ptr(), std::move(p));
}

double pmf_expectation(const Pmf& pmf, const GridFunction& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) acc += pmf.prob(i) * g(pmf.point(i));
  return acc;
}

double pmf_expectation(const Pmf& pmf, std::span<const double> g_values) {
  if (g_values.size() != pmf.size()) throw DomainError("function values do not match grid size");
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) acc += pmf.prob(i) * g_values[i];
  return acc;
}

double pmf_cdf(const Pmf& pmf, double t) {
  const auto& grid = pmf.grid();
  if (t >= grid.max()) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size() && grid[i] <= t; ++i) acc += pmf.prob(i);
  return std::min(acc, 1.0);
}

std::size_t inverse_cdf_index(std::span<const double> probs, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cumulative += probs[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // Rounding left the total a hair under 1.
  return last_positive;
}

std::size_t sample_index(const Pmf& pmf, RandomStream& rng) {
  return inverse_cdf_index(pmf.probs(), uniform01(rng));
}

double sample_point(const Pmf& pmf, RandomStream& rng) {
  return pmf.point(sample_index(pmf, rng));
}

}  // namespace exlearn
