#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "exlearn/experiments.hpp"

namespace exlearn {

// Fixed numeric format for every CSV and console value: 15 significant digits.
std::string format_number(double v);

// trial,n,target,realized_component,learned,conditional_error,marginal_risk
void write_records_csv(std::ostream& out, std::span<const TrialRecord> records);
// n,trial,dev_predictive,dev_classical
void write_curve_csv(std::ostream& out, const DeviationCurve& curve);
// trial,n,realized_component,posterior_realized,argmax_component
void write_concentration_csv(std::ostream& out, std::span<const ConcentrationRecord> records);

nlohmann::json summary_json(const ExperimentConfig& config, const PacSummary& summary);
nlohmann::json summary_json(const ExperimentConfig& config, const NegativeSummary& summary);
nlohmann::json summary_json(const ExperimentConfig& config, const GcSummary& summary);
nlohmann::json summary_json(const ExperimentConfig& config, const ConcentrationSummary& summary);

// Output of one experiment run, ready to be written to disk.
struct RunArtifacts {
  std::string csv;
  nlohmann::json summary;
  bool passed = true;
};

// Dispatches on config.kind.
RunArtifacts run_experiment(const ExperimentConfig& config);

}  // namespace exlearn
