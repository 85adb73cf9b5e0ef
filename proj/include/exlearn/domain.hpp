#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "exlearn/random.hpp"

namespace exlearn {

// Finite, strictly increasing set of instance coordinates standing in for
// the instance space.
class DomainGrid {
 public:
  explicit DomainGrid(std::vector<double> points);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const noexcept { return points_; }
  double min() const noexcept { return points_.front(); }
  double max() const noexcept { return points_.back(); }

  // Index of an exact grid point, or nullopt.
  std::optional<std::size_t> find(double x) const noexcept;
  // As find(), but throws OffGrid.
  std::size_t index_of(double x) const;

  bool operator==(const DomainGrid& other) const noexcept { return points_ == other.points_; }

 private:
  std::vector<double> points_;
};

using GridPtr = std::shared_ptr<const DomainGrid>;

GridPtr make_grid(std::vector<double> points);
// The integer grid {first, first+1, ..., last}.
GridPtr integer_grid(int first, int last);

// Probability mass function over a grid.
//
// Inputs whose total deviates from 1 by more than 1e-9 are rejected; inputs
// within that tolerance are divided by their total once, and renormalized()
// reports whether that changed anything.
class Pmf {
 public:
  Pmf(GridPtr grid, std::vector<double> probs);

  static Pmf point_mass(GridPtr grid, double x);
  static Pmf uniform(GridPtr grid);
  // Bernoulli(p) on the grid {0, 1}.
  static Pmf bernoulli(double p);

  const DomainGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double prob(std::size_t i) const { return probs_[i]; }
  double point(std::size_t i) const { return (*grid_)[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  bool renormalized() const noexcept { return renormalized_; }

  // Index of the unique atom if this is a point mass.
  std::optional<std::size_t> atom() const noexcept;

 private:
  GridPtr grid_;
  std::vector<double> probs_;
  bool renormalized_ = false;
};

// Weighted finite list of Pmfs sharing one grid.
class FiniteMixture {
 public:
  FiniteMixture(std::vector<Pmf> components, std::vector<double> weights);

  std::size_t size() const noexcept { return components_.size(); }
  const Pmf& component(std::size_t i) const { return components_[i]; }
  const std::vector<Pmf>& components() const noexcept { return components_; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const DomainGrid& grid() const noexcept { return components_.front().grid(); }
  const GridPtr& grid_ptr() const noexcept { return components_.front().grid_ptr(); }

  // The one-dimensional marginal sum_i w_i theta_i.
  Pmf marginal() const;

 private:
  std::vector<Pmf> components_;
  std::vector<double> weights_;
};

using GridFunction = std::function<double(double)>;

double pmf_expectation(const Pmf& pmf, const GridFunction& g);
// g given by its values at the grid points, in grid order.
double pmf_expectation(const Pmf& pmf, std::span<const double> g_values);

// Right-continuous CDF: sum of masses at points <= t.
double pmf_cdf(const Pmf& pmf, double t);

// Inverse-CDF lookup in ascending grid order: the first index whose
// cumulative mass exceeds u.
std::size_t inverse_cdf_index(std::span<const double> probs, double u);

// Draws one grid point, consuming exactly one uniform variate.
double sample_point(const Pmf& pmf, RandomStream& rng);
std::size_t sample_index(const Pmf& pmf, RandomStream& rng);

}  // namespace exlearn
