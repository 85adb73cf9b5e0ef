#include "exlearn/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace exlearn {

using nlohmann::json;

namespace {

json header(const ExperimentConfig& config) {
  json j;
  j["kind"] = to_string(config.kind);
  j["process"] = to_string(config.process.kind());
  if (config.concept_class) j["class"] = config.concept_class->describe();
  j["trials"] = config.trials;
  j["epsilon"] = config.epsilon;
  j["delta"] = config.delta;
  j["master_seed"] = config.master_seed;
  return j;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_records_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << "trial,n,target,realized_component,learned,conditional_error,marginal_risk\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.n << ',' << r.target.to_string() << ',' << to_string(r.realized) << ','
        << r.learned.to_string() << ',' << format_number(r.conditional_error) << ','
        << format_number(r.marginal_risk) << '\n';
  }
}

void write_curve_csv(std::ostream& out, const DeviationCurve& curve) {
  out << "n,trial,dev_predictive,dev_classical\n";
  for (const auto& p : curve) {
    out << p.n << ',' << p.trial << ',' << format_number(p.predictive) << ',' << format_number(p.classical)
        << '\n';
  }
}

void write_concentration_csv(std::ostream& out, std::span<const ConcentrationRecord> records) {
  out << "trial,n,realized_component,posterior_realized,argmax_component\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.n << ',' << r.realized << ',' << format_number(r.posterior_realized) << ','
        << r.argmax << '\n';
  }
}

json summary_json(const ExperimentConfig& config, const PacSummary& summary) {
  json j = header(config);
  j["predictive_bound"] = summary.predictive_bound;
  j["pac_bound"] = summary.pac_bound;
  json rows = json::array();
  for (const auto& r : summary.rows) {
    rows.push_back({{"n", r.n},
                    {"target", r.target},
                    {"failures", r.failure.failures},
                    {"trials", r.failure.trials},
                    {"failure_fraction", r.failure.fraction},
                    {"ci_lower", r.failure.lower},
                    {"ci_upper", r.failure.upper},
                    {"mean_conditional_error", r.mean_conditional_error},
                    {"mean_marginal_risk", r.mean_marginal_risk},
                    {"verdict", to_string(r.verdict)}});
  }
  j["rows"] = std::move(rows);
  j["passed"] = summary.passed;
  return j;
}

json summary_json(const ExperimentConfig& config, const NegativeSummary& summary) {
  json j = header(config);
  j["target"] = summary.target;
  j["expected_marginal_risk"] = summary.expected_marginal_risk;
  json rows = json::array();
  for (const auto& r : summary.rows) {
    rows.push_back({{"n", r.n},
                    {"mean_marginal_risk", r.mean_marginal_risk},
                    {"mean_conditional_error", r.mean_conditional_error},
                    {"zero_conditional_fraction", r.zero_conditional_fraction}});
  }
  j["rows"] = std::move(rows);
  j["conditional_zero"] = to_string(summary.conditional_zero);
  j["marginal_flat"] = to_string(summary.marginal_flat);
  j["passed"] = summary.passed;
  return j;
}

json summary_json(const ExperimentConfig& config, const GcSummary& summary) {
  json j = header(config);
  json rows = json::array();
  for (const auto& r : summary.rows) {
    rows.push_back({{"n", r.n}, {"median_predictive", r.median_predictive}, {"median_classical", r.median_classical}});
  }
  j["rows"] = std::move(rows);
  j["predictive_decreasing"] = to_string(summary.predictive_decreasing);
  j["passed"] = summary.passed;
  return j;
}

json summary_json(const ExperimentConfig& config, const ConcentrationSummary& summary) {
  json j = header(config);
  json rows = json::array();
  for (const auto& r : summary.rows) {
    rows.push_back({{"n", r.n}, {"accuracy", r.accuracy}, {"mean_posterior_realized", r.mean_posterior_realized}});
  }
  j["rows"] = std::move(rows);
  j["identified"] = to_string(summary.identified);
  j["passed"] = summary.passed;
  return j;
}

RunArtifacts run_experiment(const ExperimentConfig& config) {
  RunArtifacts out;
  std::ostringstream csv;
  switch (config.kind) {
    case ExperimentKind::predictive_pac: {
      const auto result = run_predictive_pac(config);
      write_records_csv(csv, result.records);
      out.summary = summary_json(config, result.summary);
      out.passed = result.summary.passed;
      break;
    }
    case ExperimentKind::negative_example: {
      const auto result = run_negative_example(config);
      write_records_csv(csv, result.records);
      out.summary = summary_json(config, result.summary);
      out.passed = result.summary.passed;
      break;
    }
    case ExperimentKind::gc_curve: {
      const auto result = run_gc_curve(config);
      write_curve_csv(csv, result.curve);
      out.summary = summary_json(config, result.summary);
      out.passed = result.summary.passed;
      break;
    }
    case ExperimentKind::posterior_concentration: {
      const auto result = run_posterior_concentration(config);
      write_concentration_csv(csv, result.records);
      out.summary = summary_json(config, result.summary);
      out.passed = result.summary.passed;
      break;
    }
  }
  out.csv = csv.str();
  return out;
}

}  // namespace exlearn
