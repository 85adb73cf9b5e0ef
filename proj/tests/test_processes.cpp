#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "exlearn/errors.hpp"
#include "exlearn/process.hpp"

namespace exlearn {
namespace {

GridPtr binary() { return make_grid({0.0, 1.0}); }

// {w = (0.5, 0.5), theta_1 = (0.5, 0.5), theta_2 = (0.9, 0.1)} on {0, 1}.
ProcessSpec two_coin_mixture() {
  auto g = binary();
  return ProcessSpec::finite_definetti(FiniteMixture({Pmf(g, {0.5, 0.5}), Pmf(g, {0.9, 0.1})}, {0.5, 0.5}));
}

ProcessSpec diagonal_3_5() {
  auto g = make_grid({3.0, 5.0});
  return ProcessSpec::diagonal(FiniteMixture({Pmf::point_mass(g, 3.0), Pmf::point_mass(g, 5.0)}, {0.5, 0.5}));
}

// Simpson's rule for the Beta-Bernoulli predictive probability of a one:
//   int t^(a+s) (1-t)^(b+n-s-1) dt / int t^(a+s-1) (1-t)^(b+n-s-1) dt.
double beta_integral_predictive(double a, double b, int ones, int n) {
  auto integrate = [](auto&& f) {
    constexpr int kPanels = 200000;
    const double h = 1.0 / kPanels;
    double acc = f(0.0) + f(1.0);
    for (int i = 1; i < kPanels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
    return acc * h / 3.0;
  };
  const double num = integrate([&](double t) { return std::pow(t, a + ones) * std::pow(1 - t, b + n - ones - 1); });
  const double den = integrate([&](double t) { return std::pow(t, a + ones - 1) * std::pow(1 - t, b + n - ones - 1); });
  return num / den;
}

// Random finite-support process with |grid| <= max_grid, <= 3 components,
// including exact zeros so that impossible prefixes occur.
ProcessSpec random_process(std::mt19937_64& gen, std::size_t max_grid) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t size = 1 + gen() % max_grid;
  const std::size_t parts = 1 + gen() % 3;
  auto grid = integer_grid(0, static_cast<int>(size) - 1);
  const int flavour = static_cast<int>(gen() % 4);
  auto random_pmf = [&] {
    std::vector<double> p(size);
    double total = 0.0;
    for (auto& v : p) total += (v = unit(gen) < 0.25 ? 0.0 : unit(gen));
    if (total == 0.0) {
      p[gen() % size] = 1.0;
      total = 1.0;
    }
    for (auto& v : p) v /= total;
    return Pmf(grid, p);
  };
  std::vector<double> w(parts);
  double total = 0.0;
  for (auto& v : w) total += (v = unit(gen) + 0.05);
  for (auto& v : w) v /= total;

  if (flavour == 0) return ProcessSpec::iid(random_pmf());
  if (flavour == 1) {
    std::vector<Pmf> atoms;
    for (std::size_t i = 0; i < parts; ++i) atoms.push_back(Pmf::point_mass(grid, static_cast<double>(gen() % size)));
    return ProcessSpec::diagonal(FiniteMixture(std::move(atoms), w));
  }
  std::vector<Pmf> comps;
  for (std::size_t i = 0; i < parts; ++i) comps.push_back(random_pmf());
  return ProcessSpec::finite_definetti(FiniteMixture(std::move(comps), w));
}

// All sequences of length `len` over the grid.
std::vector<std::vector<double>> all_prefixes(const DomainGrid& grid, std::size_t len) {
  std::vector<std::vector<double>> out{{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<std::vector<double>> next;
    for (const auto& p : out) {
      for (double x : grid.points()) {
        auto q = p;
        q.push_back(x);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

TEST(SamplePath, DiagonalPathsAreConstant) {
  const auto process = diagonal_3_5();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const auto path = sample_path(process, 4, rng);
    ASSERT_EQ(path.size(), 4u);
    EXPECT_TRUE(path.values == std::vector<double>(4, 3.0) || path.values == std::vector<double>(4, 5.0));
    const auto realized = std::get<std::size_t>(path.realized);
    EXPECT_EQ(path.values[0], realized == 0 ? 3.0 : 5.0);
  }
}

TEST(SamplePath, IidPointMass) {
  const auto process = ProcessSpec::iid(Pmf::point_mass(integer_grid(1, 3), 2.0));
  RandomStream rng(5);
  EXPECT_EQ(sample_path(process, 3, rng).values, (std::vector<double>{2.0, 2.0, 2.0}));
}

TEST(SamplePath, SameSeedSamePath) {
  const auto process = two_coin_mixture();
  RandomStream a(77);
  RandomStream b(77);
  const auto p = sample_path(process, 50, a);
  const auto q = sample_path(process, 50, b);
  EXPECT_EQ(p.values, q.values);
  EXPECT_EQ(p.realized, q.realized);
}

TEST(SamplePath, BetaBernoulliRecordsDrawnProbability) {
  const auto process = ProcessSpec::beta_bernoulli(2.0, 5.0);
  RandomStream rng(1);
  double mean_p = 0.0;
  constexpr int kTrials = 4000;
  for (int i = 0; i < kTrials; ++i) {
    const auto path = sample_path(process, 3, rng);
    const double p = std::get<double>(path.realized);
    ASSERT_GT(p, 0.0);
    ASSERT_LT(p, 1.0);
    mean_p += p;
    for (double v : path.values) ASSERT_TRUE(v == 0.0 || v == 1.0);
  }
  // Beta(2, 5) has mean 2/7 and sd 0.16; 4000 draws give sd 0.0025.
  EXPECT_NEAR(mean_p / kTrials, 2.0 / 7.0, 0.01);
}

TEST(PrefixProbability, Examples) {
  const auto mix = two_coin_mixture();
  const std::vector<double> zero{0.0};
  EXPECT_NEAR(prefix_probability(mix, zero), 0.70, 1e-15);
  EXPECT_EQ(prefix_probability(mix, std::vector<double>{}), 1.0);
  EXPECT_EQ(prefix_probability(mix, std::vector<double>{0.0, 1.0}),
            prefix_probability(mix, std::vector<double>{1.0, 0.0}));
  EXPECT_THROW(prefix_probability(ProcessSpec::beta_bernoulli(1, 1), zero), DomainError);
  EXPECT_THROW(prefix_probability(mix, std::vector<double>{0.5}), OffGrid);
}

TEST(PosteriorWeights, Examples) {
  const auto w = posterior_weights(two_coin_mixture(), std::vector<double>{0.0});
  EXPECT_NEAR(w[0], 0.25 / 0.70, 1e-15);
  EXPECT_NEAR(w[1], 0.45 / 0.70, 1e-15);

  auto g = binary();
  const auto deltas =
      ProcessSpec::finite_definetti(FiniteMixture({Pmf::point_mass(g, 1.0), Pmf::point_mass(g, 0.0)}, {0.5, 0.5}));
  EXPECT_EQ(posterior_weights(deltas, std::vector<double>{1.0}), (std::vector<double>{1.0, 0.0}));

  const auto prior = posterior_weights(two_coin_mixture(), std::vector<double>{});
  EXPECT_EQ(prior, (std::vector<double>{0.5, 0.5}));
}

TEST(PosteriorWeights, ImpossiblePrefixIsAnError) {
  EXPECT_THROW(posterior_weights(diagonal_3_5(), std::vector<double>{3.0, 5.0}), ImpossiblePrefix);
  // Long prefixes take the log-space route and must fail the same way.
  std::vector<double> long_prefix(80, 3.0);
  long_prefix.push_back(5.0);
  EXPECT_THROW(posterior_weights(diagonal_3_5(), long_prefix), ImpossiblePrefix);
  EXPECT_THROW(predictive_pmf(diagonal_3_5(), long_prefix), ImpossiblePrefix);
}

TEST(PosteriorWeights, LogSpaceMatchesExtendedPrecision) {
  auto g = integer_grid(0, 2);
  const auto process = ProcessSpec::finite_definetti(
      FiniteMixture({Pmf(g, {0.2, 0.3, 0.5}), Pmf(g, {0.5, 0.3, 0.2}), Pmf(g, {0.34, 0.33, 0.33})}, {0.3, 0.3, 0.4}));
  std::mt19937_64 gen(4);
  std::vector<double> prefix;
  for (int i = 0; i < 400; ++i) prefix.push_back(static_cast<double>(gen() % 3));
  for (std::size_t n : {10u, 50u, 51u, 120u, 400u}) {
    const std::span<const double> head(prefix.data(), n);
    std::vector<long double> direct(3);
    long double total = 0.0L;
    for (std::size_t i = 0; i < 3; ++i) {
      long double term = process.mixture().weight(i);
      for (double x : head) term *= process.mixture().component(i).prob(static_cast<std::size_t>(x));
      direct[i] = term;
      total += term;
    }
    const auto w = posterior_weights(process, head);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(w[i], static_cast<double>(direct[i] / total), 1e-12) << n;
  }
}

TEST(PosteriorWeights, UnderflowFallsBackToLogSpace) {
  auto g = binary();
  const auto process =
      ProcessSpec::finite_definetti(FiniteMixture({Pmf(g, {1e-200, 1.0}), Pmf(g, {1e-210, 1.0})}, {0.5, 0.5}));
  // Both direct products underflow to 0; the ratio is 1e20.
  const auto w = posterior_weights(process, std::vector<double>{0.0, 0.0});
  EXPECT_NEAR(w[0], 1.0, 1e-15);
  EXPECT_NEAR(w[1] / w[0], 1e-20, 1e-30);
}

TEST(PredictivePmf, BetaBernoulliMatchesBetaIntegral) {
  const auto process = ProcessSpec::beta_bernoulli(1.0, 1.0);
  const auto pmf = predictive_pmf(process, std::vector<double>{1.0, 1.0, 0.0});
  EXPECT_NEAR(pmf.prob(1), beta_integral_predictive(1.0, 1.0, 2, 3), 1e-10);
  EXPECT_NEAR(pmf.prob(1), 3.0 / 5.0, 1e-15);

  const auto skewed = ProcessSpec::beta_bernoulli(2.5, 0.7);
  const std::vector<double> prefix{1, 0, 0, 1, 1, 1, 0};
  EXPECT_NEAR(predictive_pmf(skewed, prefix).prob(1), beta_integral_predictive(2.5, 0.7, 4, 7), 1e-8);
}

TEST(PredictivePmf, IidAndDiagonal) {
  const Pmf theta(integer_grid(1, 4), {0.1, 0.2, 0.3, 0.4});
  const auto iid = ProcessSpec::iid(theta);
  EXPECT_EQ(predictive_pmf(iid, std::vector<double>{4.0, 1.0, 1.0}).probs(), theta.probs());

  const auto pred = predictive_pmf(diagonal_3_5(), std::vector<double>{3.0});
  EXPECT_EQ(pred.probs(), (std::vector<double>{1.0, 0.0}));
}

TEST(ConditionalExpectation, Examples) {
  const auto iid = ProcessSpec::iid(Pmf::uniform(integer_grid(1, 4)));
  auto g = [](double x) { return std::abs((x >= 4 ? 1.0 : 0.0) - (x >= 3 ? 1.0 : 0.0)); };
  EXPECT_DOUBLE_EQ(conditional_expectation(iid, std::vector<double>{2.0, 4.0}, g), 0.25);

  EXPECT_EQ(conditional_expectation(diagonal_3_5(), std::vector<double>{5.0, 5.0},
                                    [](double x) { return x == 5.0 ? 0.0 : 1.0; }),
            0.0);

  // Posterior (5/14, 9/14) times P(X = 1) = (0.5, 0.1).
  const double expected = 0.25 / 0.70 * 0.5 + 0.45 / 0.70 * 0.1;
  EXPECT_NEAR(conditional_expectation(two_coin_mixture(), std::vector<double>{0.0},
                                      [](double x) { return x == 1.0 ? 1.0 : 0.0; }),
              expected, 1e-15);
  EXPECT_NEAR(expected, 0.242857142857143, 1e-12);
}

TEST(BruteForceConditional, GuardsAndTrivialCases) {
  const auto mix = two_coin_mixture();
  auto is_zero = [](double x) { return x == 0.0 ? 1.0 : 0.0; };
  EXPECT_NEAR(brute_force_conditional(mix, std::vector<double>{}, is_zero), 0.7, 1e-15);
  EXPECT_THROW(brute_force_conditional(mix, std::vector<double>(7, 0.0), is_zero), SizeGuard);
  EXPECT_THROW(brute_force_conditional(ProcessSpec::iid(Pmf::uniform(integer_grid(0, 6))), std::vector<double>{},
                                       is_zero),
               SizeGuard);
  EXPECT_THROW(brute_force_conditional(diagonal_3_5(), std::vector<double>{3.0, 5.0}, is_zero), ImpossiblePrefix);
  EXPECT_THROW(brute_force_conditional(ProcessSpec::beta_bernoulli(1, 1), std::vector<double>{}, is_zero),
               DomainError);

  const Pmf theta(integer_grid(0, 2), {0.2, 0.5, 0.3});
  const auto iid = ProcessSpec::iid(theta);
  EXPECT_NEAR(brute_force_conditional(iid, std::vector<double>{2, 2, 0}, is_zero), 0.2, 1e-15);
}

// Exhaustive check at small scale: the posterior route agrees with the ratio of
// joint probabilities for every prefix and every indicator g.
TEST(ProcessProperty, PosteriorOracleMatchesBruteForce) {
  std::mt19937_64 gen(1234);
  std::size_t checked = 0;
  for (int rep = 0; rep < 150; ++rep) {
    const auto process = random_process(gen, 4);
    const auto& grid = process.grid();
    const std::size_t subsets = std::size_t{1} << grid.size();
    for (std::size_t len = 0; len <= 4; ++len) {
      for (const auto& prefix : all_prefixes(grid, len)) {
        if (prefix_probability(process, prefix) == 0.0) {
          EXPECT_THROW(predictive_pmf(process, prefix), ImpossiblePrefix);
          continue;
        }
        const auto w = posterior_weights(process, prefix);
        for (std::size_t mask = 0; mask < subsets; ++mask) {
          auto g = [&](double x) { return (mask >> grid.index_of(x)) & 1 ? 1.0 : 0.0; };
          const double fast = conditional_expectation(process, prefix, g);
          ASSERT_NEAR(fast, brute_force_conditional(process, prefix, g), 1e-10);
          double tail_route = 0.0;
          for (std::size_t i = 0; i < w.size(); ++i) {
            tail_route += w[i] * pmf_expectation(process.mixture().component(i), g);
          }
          ASSERT_NEAR(fast, tail_route, 1e-12);
          ++checked;
        }
      }
    }
  }
  EXPECT_GE(checked, 10000u);
}

TEST(ProcessProperty, PrefixProbabilityIsPermutationInvariant) {
  std::mt19937_64 gen(55);
  for (int rep = 0; rep < 300; ++rep) {
    const auto process = random_process(gen, 5);
    std::vector<double> prefix;
    const std::size_t len = gen() % 7;
    for (std::size_t j = 0; j < len; ++j) prefix.push_back(process.grid()[gen() % process.grid().size()]);
    const double base = prefix_probability(process, prefix);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(prefix.begin(), prefix.end(), gen);
      EXPECT_NEAR(prefix_probability(process, prefix), base, 1e-12);
    }
  }
}

TEST(ProcessProperty, BatchPosteriorEqualsSequentialUpdate) {
  std::mt19937_64 gen(808);
  for (int rep = 0; rep < 300; ++rep) {
    const auto process = random_process(gen, 5);
    std::vector<double> prefix;
    const std::size_t len = gen() % 60;
    for (std::size_t j = 0; j < len; ++j) prefix.push_back(process.grid()[gen() % process.grid().size()]);
    const double x = process.grid()[gen() % process.grid().size()];
    std::vector<double> extended = prefix;
    extended.push_back(x);
    std::vector<double> before;
    std::vector<double> batch;
    try {
      before = posterior_weights(process, prefix);
      batch = posterior_weights(process, extended);
    } catch (const ImpossiblePrefix&) {
      continue;
    }
    std::vector<double> step(before.size());
    double total = 0.0;
    for (std::size_t i = 0; i < step.size(); ++i) {
      step[i] = before[i] * process.mixture().component(i).prob(process.grid().index_of(x));
      total += step[i];
    }
    for (std::size_t i = 0; i < step.size(); ++i) EXPECT_NEAR(batch[i], step[i] / total, 1e-12);
  }
}

TEST(ProcessProperty, IidConditionalIsConstant) {
  const Pmf theta(integer_grid(0, 3), {0.1, 0.4, 0.3, 0.2});
  const auto iid = ProcessSpec::iid(theta);
  const auto one = ProcessSpec::finite_definetti(FiniteMixture({theta}, {1.0}));
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> prefix;
    const std::size_t len = gen() % 120;
    for (std::size_t j = 0; j < len; ++j) prefix.push_back(static_cast<double>(gen() % 4));
    const std::size_t mask = gen() % 16;
    auto g = [mask](double x) { return (mask >> static_cast<int>(x)) & 1 ? 1.0 : 0.0; };
    const double expected = pmf_expectation(theta, g);
    EXPECT_EQ(conditional_expectation(iid, prefix, g), expected);
    EXPECT_EQ(conditional_expectation(one, prefix, g), expected);
    EXPECT_EQ(posterior_weights(iid, prefix), posterior_weights(one, prefix));
  }
}

// Components at total-variation distance 0.2; posterior mass on the
// realized one, averaged over 500 seeded paths of length 200.
TEST(ProcessProperty, PosteriorConcentratesOnRealizedComponent) {
  auto g = binary();
  const auto process =
      ProcessSpec::finite_definetti(FiniteMixture({Pmf(g, {0.6, 0.4}), Pmf(g, {0.4, 0.6})}, {0.5, 0.5}));
  double mean_weight = 0.0;
  constexpr int kTrials = 500;
  for (int t = 0; t < kTrials; ++t) {
    RandomStream rng(derive_seed(2024, t));
    const auto path = sample_path(process, 200, rng);
    mean_weight += posterior_weights(process, path.values)[std::get<std::size_t>(path.realized)];
  }
  EXPECT_GE(mean_weight / kTrials, 0.99);
}

}  // namespace
}  // namespace exlearn
