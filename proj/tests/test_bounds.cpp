#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "exlearn/bounds.hpp"
#include "exlearn/errors.hpp"

namespace exlearn {
namespace {

TEST(VidyasagarBound, SpotValue) {
  // max{80 lg(80e), 40 lg 20} = max{621.17, 172.88}.
  const double first = 80.0 * std::log2(80.0 * std::numbers::e);
  EXPECT_NEAR(first, 621.17, 0.01);
  EXPECT_EQ(vidyasagar_bound(1, 0.1, 0.1), 622);
}

TEST(VidyasagarBound, Domain) {
  EXPECT_THROW(vidyasagar_bound(1, 0.0, 0.1), DomainError);
  EXPECT_THROW(vidyasagar_bound(1, 0.1, 1.0), DomainError);
  EXPECT_THROW(vidyasagar_bound(0, 0.1, 0.1), DomainError);
  EXPECT_THROW(corollary_bound(1, 1.0, 0.1), DomainError);
}

TEST(VidyasagarBound, FirstTermLinearInD) {
  // With delta large the VC term dominates; doubling d doubles it.
  const double base = (8.0 / 0.05) * std::log2(8.0 * std::numbers::e / 0.05);
  EXPECT_EQ(vidyasagar_bound(1, 0.5, 0.05), static_cast<std::int64_t>(std::ceil(base)));
  EXPECT_EQ(vidyasagar_bound(2, 0.5, 0.05), static_cast<std::int64_t>(std::ceil(2.0 * base)));
}

TEST(CorollaryBound, SpotValue) {
  // max{80 lg(80e), 40 lg 20 + 40 lg 5} = max{621.17, 265.76}.
  EXPECT_EQ(corollary_bound(1, 0.1, 0.2), 622);
}

TEST(PredictiveTransform, Examples) {
  const BoundSpec base{1, BoundFormula::vidyasagar78};
  EXPECT_EQ(predictive_transform(base.function(), 0.1, 0.2), 622);
  EXPECT_EQ(predictive_transform(base.function(), 0.1, 0.2), corollary_bound(1, 0.1, 0.2));
  // Definition: base evaluated at (delta * eps, eps / 2).
  EXPECT_EQ(predictive_transform(base.function(), 0.3, 2 * 0.07), base.evaluate(0.3 * 0.14, 0.07));
  EXPECT_THROW(predictive_transform(base.function(), 0.5, 2.0), DomainError);
  EXPECT_THROW(predictive_transform(base.function(), 0.0, 0.5), DomainError);
}

TEST(BoundsProperty, CorollaryIsTheTransformedIidBound) {
  for (int d = 1; d <= 5; ++d) {
    const BoundSpec base{d, BoundFormula::vidyasagar78};
    for (int i = 1; i <= 10; ++i) {
      const double delta = 0.095 * i;
      for (int k = 1; k <= 10; ++k) {
        const double eps = 0.095 * k;
        EXPECT_EQ(corollary_bound(d, delta, eps), predictive_transform(base.function(), delta, eps))
            << "d=" << d << " delta=" << delta << " eps=" << eps;
      }
    }
  }
}

TEST(BoundsProperty, NonincreasingInEpsilonAndDelta) {
  for (int d : {1, 3, 8}) {
    for (auto* bound : {&vidyasagar_bound, &corollary_bound}) {
      for (double delta = 0.01; delta < 0.99; delta += 0.07) {
        std::int64_t previous = INT64_MAX;
        for (double eps = 0.01; eps < 0.99; eps += 0.013) {
          const auto v = bound(d, delta, eps);
          EXPECT_GT(v, 0);
          EXPECT_LE(v, previous);
          previous = v;
        }
      }
      for (double eps = 0.01; eps < 0.99; eps += 0.07) {
        std::int64_t previous = INT64_MAX;
        for (double delta = 0.01; delta < 0.99; delta += 0.013) {
          const auto v = bound(d, delta, eps);
          EXPECT_LE(v, previous);
          previous = v;
        }
      }
    }
  }
}

TEST(InvertBound, RoundTripAndInfimum) {
  for (auto formula : {BoundFormula::vidyasagar78, BoundFormula::corollary_predictive}) {
    const BoundSpec spec{2, formula};
    double previous = 1.0;
    for (std::int64_t n : {1000, 3000, 10000, 30000}) {
      const double eps = invert_bound(spec, 0.1, n);
      EXPECT_LE(spec.evaluate(0.1, eps), n);
      EXPECT_GT(spec.evaluate(0.1, eps - 1e-6), n);
      EXPECT_LT(eps, previous);
      previous = eps;
    }
    const double eps0 = 0.15;
    EXPECT_LE(invert_bound(spec, 0.1, spec.evaluate(0.1, eps0)), eps0);
  }
}

TEST(InvertBound, Guards) {
  const BoundSpec spec{1, BoundFormula::vidyasagar78};
  EXPECT_THROW(invert_bound(spec, 0.1, 5), Unreachable);
  EXPECT_THROW(invert_bound(spec, 0.1, 0), DomainError);
}

TEST(BoundFormula, Names) {
  EXPECT_EQ(parse_bound_formula("vidyasagar78"), BoundFormula::vidyasagar78);
  EXPECT_EQ(to_string(BoundFormula::corollary_predictive), "corollary_predictive");
  EXPECT_THROW(parse_bound_formula("hoeffding"), DomainError);
}

}  // namespace
}  // namespace exlearn
