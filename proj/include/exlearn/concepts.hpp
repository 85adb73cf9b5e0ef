#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "exlearn/domain.hpp"

namespace exlearn {

enum class ConceptFamily { threshold, interval, union_intervals };

std::string to_string(ConceptFamily family);

// Binary concept on the real line.
//
//   threshold        x -> I[x >= t]                   parameters (t)
//   interval         x -> I[a <= x <= b]              parameters (a, b)
//   union_intervals  x -> OR_i I[a_i <= x <= b_i]     parameters (a_1, b_1, ..., a_k, b_k)
//
// Union parts are ordered and disjoint: a_i <= b_i < a_{i+1}.
class Concept {
 public:
  static Concept threshold(double t);
  static Concept interval(double a, double b);
  static Concept union_of(std::vector<double> endpoints);

  ConceptFamily family() const noexcept { return family_; }
  const std::vector<double>& parameters() const noexcept { return params_; }
  // Number of intervals (0 for thresholds).
  std::size_t parts() const noexcept;

  int evaluate(double x) const noexcept;
  int operator()(double x) const noexcept { return evaluate(x); }

  // e.g. "threshold(3)" or "union(1;2;5;6)".
  std::string to_string() const;

  bool operator==(const Concept& other) const = default;

 private:
  Concept(ConceptFamily family, std::vector<double> params)
      : family_(family), params_(std::move(params)) {}

  ConceptFamily family_;
  std::vector<double> params_;
};

inline int evaluate(const Concept& c, double x) noexcept { return c.evaluate(x); }

// Calls visit(concept) for every concept of the family whose parameters are
// drawn from `endpoints` (sorted, unique), in lexicographic parameter order.
void for_each_concept(ConceptFamily family, std::size_t parts, std::span<const double> endpoints,
                      const std::function<void(const Concept&)>& visit);

// A parametrized concept family restricted to a grid. Candidate parameters
// are the grid points plus one sentinel below the minimum and one above the
// maximum, so the all-ones and all-zeros concepts are always present.
class ConceptClass {
 public:
  ConceptClass(ConceptFamily family, GridPtr grid, std::size_t parts = 0, int declared_vc = 0);

  static ConceptClass thresholds(GridPtr grid) { return {ConceptFamily::threshold, std::move(grid)}; }
  static ConceptClass intervals(GridPtr grid) { return {ConceptFamily::interval, std::move(grid)}; }
  static ConceptClass unions(GridPtr grid, std::size_t k) {
    return {ConceptFamily::union_intervals, std::move(grid), k};
  }

  ConceptFamily family() const noexcept { return family_; }
  std::size_t parts() const noexcept { return parts_; }
  int declared_vc() const noexcept { return declared_vc_; }
  const DomainGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  const std::vector<double>& endpoints() const noexcept { return endpoints_; }
  // Every concept of the class, lexicographically ordered by parameters.
  const std::vector<Concept>& candidates() const noexcept { return *candidates_; }

  // True iff c is one of candidates().
  bool contains(const Concept& c) const;

  std::string describe() const;

 private:
  ConceptFamily family_;
  GridPtr grid_;
  std::size_t parts_;
  int declared_vc_;
  std::vector<double> endpoints_;
  std::shared_ptr<const std::vector<Concept>> candidates_;
};

// Ordered sample with labels in {0, 1}. Repeated points are allowed.
struct LabeledSample {
  std::vector<double> points;
  std::vector<int> labels;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

// sum_x theta(x) |h(x) - f(x)|.
double risk(const Pmf& theta, const Concept& h, const Concept& f);

// (1/n) sum_j |h(x_j) - y_j|; throws EmptySample.
double empirical_risk(const LabeledSample& sample, const Concept& h);

// Whether the class realizes all 2^m labelings of `points` (m <= 20).
bool shatter_check(const ConceptClass& cls, std::span<const double> points);

// Largest m <= cap such that some m-subset of the probe grid is shattered.
int vc_dimension_bruteforce(const ConceptClass& cls, const DomainGrid& probe_grid, int cap);

}  // namespace exlearn
