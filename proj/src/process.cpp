#include "exlearn/process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "exlearn/errors.hpp"
#include "exlearn/special.hpp"

namespace exlearn {

namespace {

constexpr std::size_t kDirectLikelihoodLimit = 50;
constexpr std::size_t kBruteForceLimit = 6;

const GridPtr& binary_grid() {
  static const GridPtr grid = make_grid({0.0, 1.0});
  return grid;
}

std::vector<double> log_space_posterior(const FiniteMixture& mixture,
                                        const std::vector<std::size_t>& counts) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(mixture.size(), kNegInf);
  for (std::size_t i = 0; i < mixture.size(); ++i) {
    if (mixture.weight(i) == 0.0) continue;
    double acc = std::log(mixture.weight(i));
    const Pmf& theta = mixture.component(i);
    for (std::size_t x = 0; x < counts.size() && acc != kNegInf; ++x) {
      if (counts[x] == 0) continue;
      acc = theta.prob(x) == 0.0 ? kNegInf
                                 : acc + static_cast<double>(counts[x]) * std::log(theta.prob(x));
    }
    logs[i] = acc;
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  if (top == kNegInf) throw ImpossiblePrefix("prefix has zero probability under every component");
  double total = 0.0;
  for (double& v : logs) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : logs) v /= total;
  return logs;
}

}  // namespace

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::iid: return "iid";
    case ProcessKind::finite_definetti: return "finite_definetti";
    case ProcessKind::beta_bernoulli: return "beta_bernoulli";
    case ProcessKind::diagonal: return "diagonal";
  }
  return "unknown";
}

ProcessSpec ProcessSpec::iid(Pmf theta) {
  ProcessSpec p(ProcessKind::iid, theta.grid_ptr());
  p.mixture_.emplace(std::vector<Pmf>{std::move(theta)}, std::vector<double>{1.0});
  return p;
}

ProcessSpec ProcessSpec::finite_definetti(FiniteMixture mixture) {
  ProcessSpec p(ProcessKind::finite_definetti, mixture.grid_ptr());
  p.mixture_.emplace(std::move(mixture));
  return p;
}

ProcessSpec ProcessSpec::beta_bernoulli(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("beta_bernoulli: a and b must be positive and finite");
  }
  ProcessSpec p(ProcessKind::beta_bernoulli, binary_grid());
  p.a_ = a;
  p.b_ = b;
  return p;
}

ProcessSpec ProcessSpec::diagonal(FiniteMixture atoms) {
  for (const auto& c : atoms.components()) {
    if (!c.atom()) throw DomainError("diagonal: every component must be a point mass");
  }
  ProcessSpec p(ProcessKind::diagonal, atoms.grid_ptr());
  p.mixture_.emplace(std::move(atoms));
  return p;
}

ProcessSpec ProcessSpec::diagonal_uniform(GridPtr grid) {
  std::vector<Pmf> atoms;
  for (double x : grid->points()) atoms.push_back(Pmf::point_mass(grid, x));
  std::vector<double> w(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
  return diagonal(FiniteMixture(std::move(atoms), std::move(w)));
}

const FiniteMixture& ProcessSpec::mixture() const {
  if (!mixture_) throw DomainError("beta_bernoulli has no finite directing measure");
  return *mixture_;
}

Pmf ProcessSpec::marginal() const {
  if (mixture_) return mixture_->marginal();
  const double p1 = a_ / (a_ + b_);
  return Pmf(grid_, {1.0 - p1, p1});
}

std::string to_string(const RealizedLaw& law) {
  if (const auto* i = std::get_if<std::size_t>(&law)) return std::to_string(*i);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", std::get<double>(law));
  return buf;
}

PathPrefix PathPrefix::head(std::size_t n) const {
  if (n > values.size()) throw DomainError("head: prefix shorter than requested length");
  return PathPrefix{std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n)),
                    realized};
}

PathPrefix sample_path(const ProcessSpec& process, std::size_t n, RandomStream& rng) {
  PathPrefix path;
  path.values.reserve(n);
  if (process.kind() == ProcessKind::beta_bernoulli) {
    const double p = beta_quantile(process.beta_a(), process.beta_b(), uniform01(rng));
    path.realized = p;
    const Pmf theta = Pmf::bernoulli(p);
    for (std::size_t j = 0; j < n; ++j) path.values.push_back(sample_point(theta, rng));
    return path;
  }
  const FiniteMixture& mix = process.mixture();
  const std::size_t component = inverse_cdf_index(mix.weights(), uniform01(rng));
  path.realized = component;
  const Pmf& theta = mix.component(component);
  for (std::size_t j = 0; j < n; ++j) path.values.push_back(sample_point(theta, rng));
  return path;
}

std::vector<std::size_t> grid_counts(const DomainGrid& grid, std::span<const double> values) {
  std::vector<std::size_t> counts(grid.size(), 0);
  for (double v : values) ++counts[grid.index_of(v)];
  return counts;
}

double prefix_probability(const ProcessSpec& process, std::span<const double> values) {
  if (!process.finite_support()) {
    throw DomainError("prefix_probability requires a finite-support process");
  }
  const FiniteMixture& mix = process.mixture();
  std::vector<std::size_t> idx;
  idx.reserve(values.size());
  for (double v : values) idx.push_back(process.grid().index_of(v));
  double total = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    double term = mix.weight(i);
    for (std::size_t j : idx) term *= mix.component(i).prob(j);
    total += term;
  }
  return total;
}

std::vector<double> posterior_weights(const ProcessSpec& process, std::span<const double> prefix) {
  const FiniteMixture& mix = process.mixture();
  const auto counts = grid_counts(process.grid(), prefix);
  if (prefix.size() > kDirectLikelihoodLimit) return log_space_posterior(mix, counts);

  std::vector<double> w(mix.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    double term = mix.weight(i);
    for (std::size_t x = 0; x < counts.size(); ++x) {
      if (counts[x] != 0) term *= std::pow(mix.component(i).prob(x), static_cast<double>(counts[x]));
    }
    w[i] = term;
    total += term;
  }
  if (!(total >= std::numeric_limits<double>::min())) return log_space_posterior(mix, counts);
  for (double& v : w) v /= total;
  return w;
}

Pmf predictive_pmf(const ProcessSpec& process, std::span<const double> prefix) {
  if (process.kind() == ProcessKind::beta_bernoulli) {
    const auto counts = grid_counts(process.grid(), prefix);
    const double total = process.beta_a() + process.beta_b() + static_cast<double>(prefix.size());
    const double p0 = (process.beta_b() + static_cast<double>(counts[0])) / total;
    const double p1 = (process.beta_a() + static_cast<double>(counts[1])) / total;
    return Pmf(process.grid_ptr(), {p0, p1});
  }
  const FiniteMixture& mix = process.mixture();
  const auto w = posterior_weights(process, prefix);
  // A posterior that has collapsed onto one component predicts with that
  // component verbatim (iid processes, diagonal processes after one draw).
  if (auto sole = std::find(w.begin(), w.end(), 1.0); sole != w.end()) {
    return mix.component(static_cast<std::size_t>(sole - w.begin()));
  }
  std::vector<double> p(process.grid().size(), 0.0);
  for (std::size_t i = 0; i < mix.size(); ++i) {
    if (w[i] == 0.0) continue;
    for (std::size_t x = 0; x < p.size(); ++x) p[x] += w[i] * mix.component(i).prob(x);
  }
  return Pmf(process.grid_ptr(), std::move(p));
}

double conditional_expectation(const ProcessSpec& process, std::span<const double> prefix,
                               const GridFunction& g) {
  return pmf_expectation(predictive_pmf(process, prefix), g);
}

double conditional_expectation(const ProcessSpec& process, std::span<const double> prefix,
                               std::span<const double> g_values) {
  return pmf_expectation(predictive_pmf(process, prefix), g_values);
}

double brute_force_conditional(const ProcessSpec& process, std::span<const double> prefix,
                               const GridFunction& g) {
  if (!process.finite_support()) {
    throw DomainError("brute_force_conditional requires a finite-support process");
  }
  if (process.grid().size() > kBruteForceLimit || prefix.size() > kBruteForceLimit) {
    throw SizeGuard("brute_force_conditional: grid and prefix are limited to 6");
  }
  const double denominator = prefix_probability(process, prefix);
  if (denominator == 0.0) throw ImpossiblePrefix("prefix has zero probability");
  std::vector<double> extended(prefix.begin(), prefix.end());
  extended.push_back(0.0);
  double numerator = 0.0;
  for (double x : process.grid().points()) {
    extended.back() = x;
    numerator += g(x) * prefix_probability(process, extended);
  }
  return numerator / denominator;
}

}  // namespace exlearn
