#include "exlearn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exlearn/errors.hpp"

namespace exlearn {

namespace {

constexpr double kTolerance = 1e-9;
constexpr double kUpperEpsilon = 1.0 - 1e-9;

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1)");
}

void check_args(int d, double delta, double epsilon) {
  if (d < 1) throw DomainError("VC dimension must be at least 1");
  check_open_unit(delta, "delta");
  check_open_unit(epsilon, "epsilon");
}

double vidyasagar_real(int d, double delta, double epsilon) {
  check_args(d, delta, epsilon);
  const double e = std::numbers::e;
  const double complexity = (8.0 * d / epsilon) * std::log2(8.0 * e / epsilon);
  const double confidence = (4.0 / epsilon) * std::log2(2.0 / delta);
  return std::max(complexity, confidence);
}

double corollary_real(int d, double delta, double epsilon) {
  check_args(d, delta, epsilon);
  const double e = std::numbers::e;
  const double complexity = (16.0 * d / epsilon) * std::log2(16.0 * e / epsilon);
  const double confidence =
      (8.0 / epsilon) * std::log2(2.0 / delta) + (8.0 / epsilon) * std::log2(1.0 / epsilon);
  return std::max(complexity, confidence);
}

std::int64_t round_up(double v) {
  if (!(v < 9.0e18)) throw DomainError("sample size overflows 64 bits");
  return static_cast<std::int64_t>(std::ceil(v));
}

}  // namespace

std::string to_string(BoundFormula formula) {
  return formula == BoundFormula::vidyasagar78 ? "vidyasagar78" : "corollary_predictive";
}

BoundFormula parse_bound_formula(const std::string& name) {
  if (name == "vidyasagar78") return BoundFormula::vidyasagar78;
  if (name == "corollary_predictive") return BoundFormula::corollary_predictive;
  throw DomainError("unknown bound formula '" + name + "'");
}

std::int64_t vidyasagar_bound(int d, double delta, double epsilon) {
  return round_up(vidyasagar_real(d, delta, epsilon));
}

std::int64_t corollary_bound(int d, double delta, double epsilon) {
  return round_up(corollary_real(d, delta, epsilon));
}

std::int64_t predictive_transform(const BoundFunction& base, double delta, double epsilon) {
  const double shrunk_delta = delta * epsilon;
  const double half_epsilon = epsilon / 2.0;
  check_open_unit(shrunk_delta, "delta * epsilon");
  check_open_unit(half_epsilon, "epsilon / 2");
  return base(shrunk_delta, half_epsilon);
}

std::int64_t BoundSpec::evaluate(double delta, double epsilon) const {
  return round_up(real_value(delta, epsilon));
}

double BoundSpec::real_value(double delta, double epsilon) const {
  return formula == BoundFormula::vidyasagar78 ? vidyasagar_real(d, delta, epsilon)
                                               : corollary_real(d, delta, epsilon);
}

BoundFunction BoundSpec::function() const {
  return [spec = *this](double delta, double epsilon) { return spec.evaluate(delta, epsilon); };
}

double invert_bound(const BoundSpec& spec, double delta, std::int64_t n) {
  if (n < 1) throw DomainError("invert_bound: n must be at least 1");
  const double target = static_cast<double>(n);
  // ceil(f) <= n  <=>  f <= n for integer n; comparing the real value avoids
  // overflowing the rounded bound near epsilon = 0.
  auto satisfied = [&](double eps) { return spec.real_value(delta, eps) <= target; };
  if (!satisfied(kUpperEpsilon)) {
    throw Unreachable("no epsilon in (0, 1) brings the bound down to " + std::to_string(n));
  }
  double lo = 0.0;  // never satisfied: the bound diverges as epsilon -> 0
  double hi = kUpperEpsilon;
  while (hi - lo > kTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (satisfied(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace exlearn
