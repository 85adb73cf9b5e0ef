#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "exlearn/domain.hpp"
#include "exlearn/process.hpp"

namespace exlearn {

// F_n(t) = (1/n) #{ j : x_j <= t }. Throws EmptySample.
double empirical_cdf(std::span<const double> values, double t);

// sup_t |F_n(t) - P(X_{n+1} <= t | X_1..X_n)|. Both functions are steps
// jumping only at grid atoms, so the supremum is a maximum over the atoms.
double sup_deviation_predictive(const ProcessSpec& process, std::span<const double> prefix);

// sup_t |F_n(t) - F(t)| for a fixed reference law F on the prefix's grid.
double sup_deviation_classical(std::span<const double> prefix, const Pmf& reference);

// One row of a deviation curve.
struct DeviationPoint {
  std::size_t n = 0;
  std::size_t trial = 0;
  double predictive = 0.0;
  double classical = 0.0;
};

using DeviationCurve = std::vector<DeviationPoint>;

}  // namespace exlearn
