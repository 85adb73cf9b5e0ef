#include "exlearn/gc_stats.hpp"

#include <algorithm>
#include <cmath>

#include "exlearn/errors.hpp"

namespace exlearn {

namespace {

// max over atoms of |F_n - F| where F is given by its masses on the grid.
double max_cdf_gap(const DomainGrid& grid, std::span<const double> prefix, const Pmf& law) {
  if (prefix.empty()) throw EmptySample("deviation needs at least one observation");
  if (!(law.grid() == grid)) throw DomainError("reference law lives on a different grid");
  const auto counts = grid_counts(grid, prefix);
  const double n = static_cast<double>(prefix.size());
  std::size_t seen = 0;
  double mass = 0.0;
  double gap = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    seen += counts[i];
    mass += law.prob(i);
    const double empirical = static_cast<double>(seen) / n;
    const double reference = i + 1 == grid.size() ? 1.0 : std::min(mass, 1.0);
    gap = std::max(gap, std::abs(empirical - reference));
  }
  return std::min(gap, 1.0);
}

}  // namespace

double empirical_cdf(std::span<const double> values, double t) {
  if (values.empty()) throw EmptySample("empirical_cdf: empty prefix");
  const auto below = std::count_if(values.begin(), values.end(), [t](double v) { return v <= t; });
  return static_cast<double>(below) / static_cast<double>(values.size());
}

double sup_deviation_predictive(const ProcessSpec& process, std::span<const double> prefix) {
  return max_cdf_gap(process.grid(), prefix, predictive_pmf(process, prefix));
}

double sup_deviation_classical(std::span<const double> prefix, const Pmf& reference) {
  return max_cdf_gap(reference.grid(), prefix, reference);
}

}  // namespace exlearn
