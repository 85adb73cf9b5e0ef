#pragma once

#include <filesystem>

#include <json.hpp>

#include "exlearn/concepts.hpp"
#include "exlearn/domain.hpp"
#include "exlearn/experiments.hpp"
#include "exlearn/process.hpp"

namespace exlearn {

// JSON readers for experiment configs. Every failure surfaces as ConfigError.
// The schema is documented in docs/config_schema.md.

// {"points": [...], "probs": [...]}
Pmf parse_pmf(const nlohmann::json& j);
// {"weights": [...], "components": [pmf, ...]}
FiniteMixture parse_mixture(const nlohmann::json& j);
// {"type": "iid" | "finite_definetti" | "beta_bernoulli" | "diagonal", ...}
ProcessSpec parse_process(const nlohmann::json& j);
// {"class": "threshold" | "interval" | "union_intervals", "k": int, "declared_vc": int}
ConceptClass parse_concept_class(const nlohmann::json& j, GridPtr grid);
// {"threshold": t} | {"interval": [a, b]} | {"union_intervals": [[a, b], ...]}
Concept parse_concept(const nlohmann::json& j);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace exlearn
