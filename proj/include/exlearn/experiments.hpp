#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exlearn/concepts.hpp"
#include "exlearn/gc_stats.hpp"
#include "exlearn/learners.hpp"
#include "exlearn/process.hpp"

namespace exlearn {

enum class ExperimentKind { predictive_pac, gc_curve, posterior_concentration, negative_example };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentConfig {
  ExperimentConfig(ExperimentKind kind, ProcessSpec process)
      : kind(kind), process(std::move(process)) {}

  ExperimentKind kind;
  ProcessSpec process;
  // Required for predictive_pac and negative_example; must share the process grid.
  std::optional<ConceptClass> concept_class;
  TieBreak tie_break = TieBreak::lex_min;
  // nullopt means worst case over the class.
  std::optional<Concept> target;
  std::vector<std::size_t> n_grid;
  std::size_t trials = 1;
  double epsilon = 0.1;
  double delta = 0.1;
  std::uint64_t master_seed = 0;
  std::string output = "experiment";
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
  // Allowed spread of mean marginal risk across n in the negative example.
  double flat_tolerance = 0.02;
};

// Throws ConfigError describing the first violated requirement.
void validate(const ExperimentConfig& config);

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t n = 0;
  Concept target;
  RealizedLaw realized;
  Concept learned;
  double conditional_error = 0.0;  // E(|h - f|(X_{n+1}) | X_1..X_n), exact
  double marginal_risk = 0.0;      // E|h - f| under the one-dimensional marginal
};

struct FailureEstimate {
  std::size_t failures = 0;
  std::size_t trials = 0;
  double fraction = 0.0;
  double lower = 0.0;
  double upper = 1.0;
};

// Two-sided Clopper-Pearson interval for `failures` successes in `trials`.
FailureEstimate clopper_pearson(std::size_t failures, std::size_t trials, double confidence = 0.95);

// Counts records with conditional_error > epsilon (strict). Throws EmptyRecords.
FailureEstimate estimate_failure_probability(std::span<const TrialRecord> records, double epsilon);

enum class Verdict { pass, fail, not_applicable };

std::string to_string(Verdict verdict);

struct PacRow {
  std::size_t n = 0;
  std::string target;  // the target with the most failures
  FailureEstimate failure;
  double mean_conditional_error = 0.0;
  double mean_marginal_risk = 0.0;
  Verdict verdict = Verdict::not_applicable;
};

struct PacSummary {
  std::int64_t predictive_bound = 0;  // s(delta*eps, eps/2) with the i.i.d. bound
  std::int64_t pac_bound = 0;         // s(delta, eps), reported only
  std::vector<PacRow> rows;
  bool passed = true;
};

struct PacResult {
  std::vector<TrialRecord> records;
  PacSummary summary;
};

// Predictive PAC experiment: fresh path per (trial, n), ERM on f restricted to
// the path, exact conditional error through the posterior oracle.
PacResult run_predictive_pac(const ExperimentConfig& config);

struct NegativeRow {
  std::size_t n = 0;
  double mean_marginal_risk = 0.0;
  double mean_conditional_error = 0.0;
  double zero_conditional_fraction = 0.0;
};

struct NegativeSummary {
  std::string target;
  double expected_marginal_risk = 0.0;  // exact, by enumeration over atoms
  std::vector<NegativeRow> rows;
  Verdict conditional_zero = Verdict::pass;
  Verdict marginal_flat = Verdict::pass;
  bool passed = true;
};

struct NegativeResult {
  std::vector<TrialRecord> records;
  NegativeSummary summary;
};

// Exact expected marginal risk of the rule when the diagonal process feeds it
// a constant path, averaged over the atoms.
double diagonal_expected_risk(const ProcessSpec& diagonal, const LearningRule& rule, const Concept& target);

// Candidate with the largest diagonal_expected_risk (first on ties).
Concept worst_case_diagonal_target(const ProcessSpec& diagonal, const LearningRule& rule);

NegativeResult run_negative_example(const ExperimentConfig& config);

struct GcRow {
  std::size_t n = 0;
  double median_predictive = 0.0;
  double median_classical = 0.0;
};

struct GcSummary {
  std::vector<GcRow> rows;
  Verdict predictive_decreasing = Verdict::pass;
  bool passed = true;
};

struct GcResult {
  DeviationCurve curve;
  GcSummary summary;
};

// One path per trial, deviations evaluated along its prefixes. The classical
// reference is the process marginal.
GcResult run_gc_curve(const ExperimentConfig& config);

struct ConcentrationRecord {
  std::size_t trial = 0;
  std::size_t n = 0;
  std::size_t realized = 0;
  double posterior_realized = 0.0;
  std::size_t argmax = 0;
};

struct ConcentrationRow {
  std::size_t n = 0;
  double accuracy = 0.0;  // fraction of trials with argmax == realized
  double mean_posterior_realized = 0.0;
};

struct ConcentrationSummary {
  std::vector<ConcentrationRow> rows;
  Verdict identified = Verdict::pass;  // accuracy at the largest n >= 1 - delta
  bool passed = true;
};

struct ConcentrationResult {
  std::vector<ConcentrationRecord> records;
  ConcentrationSummary summary;
};

ConcentrationResult run_posterior_concentration(const ExperimentConfig& config);

double median(std::vector<double> values);

}  // namespace exlearn
