#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace exlearn {

enum class BoundFormula { vidyasagar78, corollary_predictive };

std::string to_string(BoundFormula formula);
BoundFormula parse_bound_formula(const std::string& name);

// Distribution-free PAC sample size for a class of VC dimension d:
//   max{ (8d/eps) lg(8e/eps), (4/eps) lg(2/delta) },  lg = log2,
// rounded up. Requires eps, delta in (0, 1).
std::int64_t vidyasagar_bound(int d, double delta, double epsilon);

// Predictive PAC sample size under exchangeable inputs:
//   max{ (16d/eps) lg(16e/eps), (8/eps) lg(2/delta) + (8/eps) lg(1/eps) },
// rounded up. Requires eps, delta in (0, 1).
std::int64_t corollary_bound(int d, double delta, double epsilon);

// A sample-size function of (delta, epsilon).
using BoundFunction = std::function<std::int64_t(double delta, double epsilon)>;

// base(delta * epsilon, epsilon / 2): the i.i.d. sample complexity turned
// into a predictive one. Requires delta*epsilon and epsilon/2 in (0, 1).
std::int64_t predictive_transform(const BoundFunction& base, double delta, double epsilon);

struct BoundSpec {
  int d = 1;
  BoundFormula formula = BoundFormula::vidyasagar78;

  std::int64_t evaluate(double delta, double epsilon) const;
  // Unrounded value of the formula.
  double real_value(double delta, double epsilon) const;
  BoundFunction function() const;
};

// Infimum epsilon with spec(delta, epsilon) <= n, by bisection on
// (0, 1 - 1e-9] to absolute tolerance 1e-9. The returned value satisfies
// the inequality. Throws Unreachable when even 1 - 1e-9 does not.
double invert_bound(const BoundSpec& spec, double delta, std::int64_t n);

}  // namespace exlearn
