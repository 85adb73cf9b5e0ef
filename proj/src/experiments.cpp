#include "exlearn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>
#include <type_traits>

#include "exlearn/bounds.hpp"
#include "exlearn/errors.hpp"
#include "exlearn/special.hpp"

namespace exlearn {

namespace {

// Runs fn(trial) for every trial index on a pool of workers and returns the
// results in trial order. Each trial must derive its own random stream, so
// the output does not depend on scheduling. The lowest-indexed failure is
// rethrown.
template <class Fn>
auto run_trials(std::size_t trials, unsigned workers, Fn&& fn) {
  using Out = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<Out>> slots(trials);
  std::vector<std::exception_ptr> errors(trials);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned count = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(trials, 1)));
  if (count <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(drain);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Out> out;
  out.reserve(trials);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

template <class T>
std::vector<T> flatten(std::vector<std::vector<T>> nested) {
  std::vector<T> flat;
  for (auto& chunk : nested) {
    for (auto& item : chunk) flat.push_back(std::move(item));
  }
  return flat;
}

RandomStream stream_for(std::uint64_t master_seed, std::size_t trial) {
  return RandomStream(derive_seed(master_seed, trial));
}

RandomStream stream_for(std::uint64_t master_seed, std::size_t trial, std::size_t n_index) {
  return RandomStream(derive_seed(derive_seed(master_seed, trial), n_index));
}

// |h - f| at every grid point.
std::vector<double> disagreement(const DomainGrid& grid, const Concept& h, const Concept& f) {
  std::vector<double> g(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) g[i] = h(grid[i]) != f(grid[i]) ? 1.0 : 0.0;
  return g;
}

std::vector<Concept> targets_of(const ExperimentConfig& config) {
  if (config.target) return {*config.target};
  return config.concept_class->candidates();
}

// Fresh path per (trial, n); every target is learned on the same path.
std::vector<TrialRecord> learning_trial(const ExperimentConfig& config, const LearningRule& rule,
                                        const std::vector<Concept>& targets, const Pmf& marginal,
                                        std::size_t trial) {
  std::vector<TrialRecord> out;
  out.reserve(config.n_grid.size() * targets.size());
  for (std::size_t k = 0; k < config.n_grid.size(); ++k) {
    const std::size_t n = config.n_grid[k];
    RandomStream rng = stream_for(config.master_seed, trial, k);
    const PathPrefix path = sample_path(config.process, n, rng);
    const Pmf predictive = predictive_pmf(config.process, path.values);
    for (const Concept& f : targets) {
      const Concept h = rule.learn(restrict(f, path.values));
      const auto g = disagreement(config.process.grid(), h, f);
      out.push_back(TrialRecord{trial, n, f, path.realized, h, pmf_expectation(predictive, g),
                                risk(marginal, h, f)});
    }
  }
  return out;
}

std::vector<TrialRecord> run_learning_trials(const ExperimentConfig& config,
                                             const std::vector<Concept>& targets) {
  const LearningRule rule(*config.concept_class, config.tie_break);
  const Pmf marginal = config.process.marginal();
  auto nested = run_trials(config.trials, config.workers, [&](std::size_t trial) {
    return learning_trial(config, rule, targets, marginal, trial);
  });
  return flatten(std::move(nested));
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::predictive_pac: return "predictive_pac";
    case ExperimentKind::gc_curve: return "gc_curve";
    case ExperimentKind::posterior_concentration: return "posterior_concentration";
    case ExperimentKind::negative_example: return "negative_example";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto kind : {ExperimentKind::predictive_pac, ExperimentKind::gc_curve,
                    ExperimentKind::posterior_concentration, ExperimentKind::negative_example}) {
    if (name == to_string(kind)) return kind;
  }
  throw ConfigError("unknown experiment kind '" + name + "'");
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

void validate(const ExperimentConfig& config) {
  require(config.trials >= 1, "trials must be at least 1");
  require(!config.n_grid.empty(), "n_grid must not be empty");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    require(config.n_grid[i] >= 1, "n_grid entries must be at least 1");
    require(i == 0 || config.n_grid[i - 1] < config.n_grid[i], "n_grid must be strictly increasing");
  }
  require(config.epsilon > 0.0 && config.epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(config.delta > 0.0 && config.delta < 1.0, "delta must lie in (0, 1)");
  require(config.flat_tolerance >= 0.0, "flat_tolerance must be nonnegative");

  const bool learns = config.kind == ExperimentKind::predictive_pac ||
                      config.kind == ExperimentKind::negative_example;
  if (learns) {
    require(config.concept_class.has_value(), to_string(config.kind) + " requires a concept class");
    require(config.concept_class->grid() == config.process.grid(),
            "concept class and process must share a grid");
    require(config.concept_class->candidates().size() >= 2, "concept class must be non-trivial");
    if (config.target) {
      require(config.concept_class->contains(*config.target),
              "target " + config.target->to_string() + " is not in the class " +
                  config.concept_class->describe());
    }
  }

  switch (config.kind) {
    case ExperimentKind::predictive_pac:
      require(config.process.finite_support(), "predictive_pac requires a finite-support process");
      break;
    case ExperimentKind::negative_example: {
      require(config.process.kind() == ProcessKind::diagonal, "negative_example requires a diagonal process");
      const auto& atoms = config.process.mixture().components();
      const auto first = atoms.front().atom();
      const bool distinct = std::any_of(atoms.begin(), atoms.end(),
                                        [&](const Pmf& a) { return a.atom() != first; });
      require(distinct, "negative_example: the diagonal atoms all coincide");
      break;
    }
    case ExperimentKind::posterior_concentration:
      require(config.process.finite_support() && config.process.mixture().size() >= 2,
              "posterior_concentration requires a finite mixture with at least two components");
      break;
    case ExperimentKind::gc_curve:
      break;
  }
}

FailureEstimate clopper_pearson(std::size_t failures, std::size_t trials, double confidence) {
  if (trials == 0) throw EmptyRecords("clopper_pearson: no trials");
  if (failures > trials) throw DomainError("clopper_pearson: more failures than trials");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");
  const double alpha = 1.0 - confidence;
  const double k = static_cast<double>(failures);
  const double n = static_cast<double>(trials);
  FailureEstimate est;
  est.failures = failures;
  est.trials = trials;
  est.fraction = k / n;
  est.lower = failures == 0 ? 0.0 : beta_quantile(k, n - k + 1.0, alpha / 2.0);
  est.upper = failures == trials ? 1.0 : beta_quantile(k + 1.0, n - k, 1.0 - alpha / 2.0);
  // Bisection error is far below double spacing at the estimate, but keep
  // the interval closed around it regardless.
  est.lower = std::min(est.lower, est.fraction);
  est.upper = std::max(est.upper, est.fraction);
  return est;
}

FailureEstimate estimate_failure_probability(std::span<const TrialRecord> records, double epsilon) {
  if (records.empty()) throw EmptyRecords("no trial records");
  const auto failures = static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [epsilon](const TrialRecord& r) { return r.conditional_error > epsilon; }));
  return clopper_pearson(failures, records.size());
}

PacResult run_predictive_pac(const ExperimentConfig& config) {
  validate(config);
  require(config.kind == ExperimentKind::predictive_pac, "config kind is not predictive_pac");
  const std::vector<Concept> targets = targets_of(config);

  PacResult result;
  result.records = run_learning_trials(config, targets);

  PacSummary& summary = result.summary;
  const BoundSpec base{config.concept_class->declared_vc(), BoundFormula::vidyasagar78};
  try {
    summary.predictive_bound = predictive_transform(base.function(), config.delta, config.epsilon);
    summary.pac_bound = base.evaluate(config.delta, config.epsilon);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("bound evaluation failed: ") + e.what());
  }

  for (std::size_t n : config.n_grid) {
    PacRow row;
    row.n = n;
    bool have = false;
    for (const Concept& f : targets) {
      std::vector<TrialRecord> subset;
      for (const auto& r : result.records) {
        if (r.n == n && r.target == f) subset.push_back(r);
      }
      const FailureEstimate est = estimate_failure_probability(subset, config.epsilon);
      if (!have || est.failures > row.failure.failures) {
        have = true;
        row.target = f.to_string();
        row.failure = est;
        row.mean_conditional_error = 0.0;
        row.mean_marginal_risk = 0.0;
        for (const auto& r : subset) {
          row.mean_conditional_error += r.conditional_error;
          row.mean_marginal_risk += r.marginal_risk;
        }
        row.mean_conditional_error /= static_cast<double>(subset.size());
        row.mean_marginal_risk /= static_cast<double>(subset.size());
      }
    }
    if (static_cast<std::int64_t>(n) >= summary.predictive_bound) {
      row.verdict = row.failure.upper <= config.delta ? Verdict::pass : Verdict::fail;
      if (row.verdict == Verdict::fail) summary.passed = false;
    }
    summary.rows.push_back(std::move(row));
  }
  return result;
}

double diagonal_expected_risk(const ProcessSpec& diagonal, const LearningRule& rule, const Concept& target) {
  const FiniteMixture& atoms = diagonal.mixture();
  const Pmf marginal = diagonal.marginal();
  double expected = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double x = atoms.component(i).point(*atoms.component(i).atom());
    const double sigma[] = {x};
    const Concept h = rule.learn(restrict(target, sigma));
    expected += atoms.weight(i) * risk(marginal, h, target);
  }
  return expected;
}

Concept worst_case_diagonal_target(const ProcessSpec& diagonal, const LearningRule& rule) {
  const auto& candidates = rule.concept_class().candidates();
  std::size_t best = 0;
  double best_risk = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double r = diagonal_expected_risk(diagonal, rule, candidates[c]);
    if (r > best_risk) {
      best_risk = r;
      best = c;
    }
  }
  return candidates[best];
}

NegativeResult run_negative_example(const ExperimentConfig& config) {
  validate(config);
  require(config.kind == ExperimentKind::negative_example, "config kind is not negative_example");
  const LearningRule rule(*config.concept_class, config.tie_break);
  const Concept target = config.target ? *config.target : worst_case_diagonal_target(config.process, rule);

  NegativeResult result;
  result.records = run_learning_trials(config, {target});

  NegativeSummary& summary = result.summary;
  summary.target = target.to_string();
  summary.expected_marginal_risk = diagonal_expected_risk(config.process, rule, target);
  double lowest = 2.0;
  double highest = -1.0;
  for (std::size_t n : config.n_grid) {
    NegativeRow row;
    row.n = n;
    std::size_t count = 0;
    std::size_t zeros = 0;
    for (const auto& r : result.records) {
      if (r.n != n) continue;
      ++count;
      row.mean_marginal_risk += r.marginal_risk;
      row.mean_conditional_error += r.conditional_error;
      if (r.conditional_error == 0.0) ++zeros;
    }
    row.mean_marginal_risk /= static_cast<double>(count);
    row.mean_conditional_error /= static_cast<double>(count);
    row.zero_conditional_fraction = static_cast<double>(zeros) / static_cast<double>(count);
    if (zeros != count) summary.conditional_zero = Verdict::fail;
    lowest = std::min(lowest, row.mean_marginal_risk);
    highest = std::max(highest, row.mean_marginal_risk);
    summary.rows.push_back(row);
  }
  summary.marginal_flat = highest - lowest <= config.flat_tolerance ? Verdict::pass : Verdict::fail;
  summary.passed = summary.conditional_zero == Verdict::pass && summary.marginal_flat == Verdict::pass;
  return result;
}

GcResult run_gc_curve(const ExperimentConfig& config) {
  validate(config);
  const Pmf reference = config.process.marginal();
  const std::size_t longest = config.n_grid.back();
  auto nested = run_trials(config.trials, config.workers, [&](std::size_t trial) {
    RandomStream rng = stream_for(config.master_seed, trial);
    const PathPrefix path = sample_path(config.process, longest, rng);
    std::vector<DeviationPoint> points;
    for (std::size_t n : config.n_grid) {
      const std::span<const double> prefix(path.values.data(), n);
      points.push_back({n, trial, sup_deviation_predictive(config.process, prefix),
                        sup_deviation_classical(prefix, reference)});
    }
    return points;
  });

  GcResult result;
  result.curve = flatten(std::move(nested));
  double previous = 2.0;
  for (std::size_t k = 0; k < config.n_grid.size(); ++k) {
    std::vector<double> predictive;
    std::vector<double> classical;
    for (const auto& p : result.curve) {
      if (p.n != config.n_grid[k]) continue;
      predictive.push_back(p.predictive);
      classical.push_back(p.classical);
    }
    GcRow row{config.n_grid[k], median(predictive), median(classical)};
    if (!(row.median_predictive < previous)) result.summary.predictive_decreasing = Verdict::fail;
    previous = row.median_predictive;
    result.summary.rows.push_back(row);
  }
  result.summary.passed = result.summary.predictive_decreasing == Verdict::pass;
  return result;
}

ConcentrationResult run_posterior_concentration(const ExperimentConfig& config) {
  validate(config);
  const std::size_t longest = config.n_grid.back();
  auto nested = run_trials(config.trials, config.workers, [&](std::size_t trial) {
    RandomStream rng = stream_for(config.master_seed, trial);
    const PathPrefix path = sample_path(config.process, longest, rng);
    const std::size_t realized = std::get<std::size_t>(path.realized);
    std::vector<ConcentrationRecord> out;
    for (std::size_t n : config.n_grid) {
      const auto w = posterior_weights(config.process, std::span<const double>(path.values.data(), n));
      const auto argmax = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
      out.push_back({trial, n, realized, w[realized], argmax});
    }
    return out;
  });

  ConcentrationResult result;
  result.records = flatten(std::move(nested));
  for (std::size_t n : config.n_grid) {
    ConcentrationRow row;
    row.n = n;
    std::size_t count = 0;
    std::size_t hits = 0;
    for (const auto& r : result.records) {
      if (r.n != n) continue;
      ++count;
      if (r.argmax == r.realized) ++hits;
      row.mean_posterior_realized += r.posterior_realized;
    }
    row.accuracy = static_cast<double>(hits) / static_cast<double>(count);
    row.mean_posterior_realized /= static_cast<double>(count);
    result.summary.rows.push_back(row);
  }
  result.summary.identified =
      result.summary.rows.back().accuracy >= 1.0 - config.delta ? Verdict::pass : Verdict::fail;
  result.summary.passed = result.summary.identified == Verdict::pass;
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) throw EmptyRecords("median of an empty list");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace exlearn
