#pragma once

namespace exlearn {

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

// Inverse of I_x(a, b) in x. Runs exactly 64 bisection steps on [0, 1], so
// the result is a deterministic function of (a, b, p).
double beta_quantile(double a, double b, double p);

}  // namespace exlearn
