#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "exlearn/domain.hpp"
#include "exlearn/random.hpp"

namespace exlearn {

enum class ProcessKind { iid, finite_definetti, beta_bernoulli, diagonal };

std::string to_string(ProcessKind kind);

// An exchangeable process given by its de Finetti directing measure.
//
// The finite-support kinds (iid, finite_definetti, diagonal) all expose a
// FiniteMixture; iid is the one-component case. beta_bernoulli lives on the
// grid {0, 1} with a Beta(a, b) directing measure.
class ProcessSpec {
 public:
  static ProcessSpec iid(Pmf theta);
  static ProcessSpec finite_definetti(FiniteMixture mixture);
  static ProcessSpec beta_bernoulli(double a, double b);
  // Every component must be a point mass.
  static ProcessSpec diagonal(FiniteMixture atoms);
  // Diagonal process over the given atoms with equal weights.
  static ProcessSpec diagonal_uniform(GridPtr grid);

  ProcessKind kind() const noexcept { return kind_; }
  bool finite_support() const noexcept { return kind_ != ProcessKind::beta_bernoulli; }
  const DomainGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  // Throws DomainError for beta_bernoulli.
  const FiniteMixture& mixture() const;
  double beta_a() const noexcept { return a_; }
  double beta_b() const noexcept { return b_; }

  // Law of a single X_i.
  Pmf marginal() const;

 private:
  ProcessSpec(ProcessKind kind, GridPtr grid) : kind_(kind), grid_(std::move(grid)) {}

  ProcessKind kind_;
  GridPtr grid_;
  std::optional<FiniteMixture> mixture_;
  double a_ = 0.0;
  double b_ = 0.0;
};

// Index of the drawn mixture component, or the drawn success probability
// for beta_bernoulli.
using RealizedLaw = std::variant<std::size_t, double>;

std::string to_string(const RealizedLaw& law);

struct PathPrefix {
  std::vector<double> values;
  RealizedLaw realized;

  std::size_t size() const noexcept { return values.size(); }
  // The first n values with the same realized law.
  PathPrefix head(std::size_t n) const;
};

// Draws theta from the directing measure (one uniform variate), then n
// i.i.d. points from theta.
PathPrefix sample_path(const ProcessSpec& process, std::size_t n, RandomStream& rng);

// Per-grid-point occurrence counts; throws OffGrid.
std::vector<std::size_t> grid_counts(const DomainGrid& grid, std::span<const double> values);

// P(X_1 = x_1, ..., X_n = x_n) = sum_i w_i prod_j theta_i(x_j).
// Finite-support processes only.
double prefix_probability(const ProcessSpec& process, std::span<const double> values);

// Bayes posterior over mixture components given the prefix. Likelihoods are
// taken in log space once the prefix is longer than 50 or the direct product
// underflows. Throws ImpossiblePrefix when every component has likelihood 0.
std::vector<double> posterior_weights(const ProcessSpec& process, std::span<const double> prefix);

// Law of X_{n+1} given the prefix.
Pmf predictive_pmf(const ProcessSpec& process, std::span<const double> prefix);

// E(g(X_{n+1}) | X_1..X_n = prefix).
double conditional_expectation(const ProcessSpec& process, std::span<const double> prefix,
                               const GridFunction& g);
double conditional_expectation(const ProcessSpec& process, std::span<const double> prefix,
                               std::span<const double> g_values);

// Same quantity as conditional_expectation, computed from first principles
// as sum_x g(x) P(prefix, x) / P(prefix). Small-instance oracle: grid and
// prefix are limited to 6 points (SizeGuard).
double brute_force_conditional(const ProcessSpec& process, std::span<const double> prefix,
                               const GridFunction& g);

}  // namespace exlearn
