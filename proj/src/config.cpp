#include "exlearn/config.hpp"

#include <fstream>
#include <set>

#include "exlearn/errors.hpp"

namespace exlearn {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ConfigError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<double> number_list(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::uint64_t unsigned_number(const json& j, const char* what) {
  if (!j.is_number_unsigned()) throw ConfigError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

// Reuses one grid object for every component that lists the same points.
GridPtr intern_grid(std::vector<double> points, GridPtr& shared) {
  if (shared && shared->points() == points) return shared;
  shared = make_grid(std::move(points));
  return shared;
}

Pmf parse_pmf_on(const json& j, GridPtr& shared) {
  GridPtr grid = intern_grid(number_list(field(j, "points"), "points"), shared);
  return Pmf(std::move(grid), number_list(field(j, "probs"), "probs"));
}

FiniteMixture parse_mixture_on(const json& j, GridPtr& shared) {
  const json& comps = field(j, "components");
  if (!comps.is_array()) throw ConfigError("components must be an array");
  std::vector<Pmf> components;
  for (const auto& c : comps) components.push_back(parse_pmf_on(c, shared));
  return FiniteMixture(std::move(components), number_list(field(j, "weights"), "weights"));
}

// Diagonal atoms either as a mixture of point masses or as
// {"points": [...], "weights": [...]} (weights default to uniform).
FiniteMixture parse_atoms(const json& j) {
  if (j.contains("components")) {
    GridPtr shared;
    return parse_mixture_on(j, shared);
  }
  GridPtr grid = make_grid(number_list(field(j, "points"), "points"));
  std::vector<double> weights;
  if (j.contains("weights")) {
    weights = number_list(j["weights"], "weights");
  } else {
    weights.assign(grid->size(), 1.0 / static_cast<double>(grid->size()));
  }
  std::vector<Pmf> atoms;
  for (double x : grid->points()) atoms.push_back(Pmf::point_mass(grid, x));
  return FiniteMixture(std::move(atoms), std::move(weights));
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known) {
  for (const auto& [key, value] : j.items()) {
    if (known.count(key) || key == "comment" || key.starts_with("_")) continue;
    throw ConfigError("unknown config field '" + key + "'");
  }
}

template <class Fn>
auto translating(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

Pmf parse_pmf(const json& j) {
  return translating([&] {
    GridPtr shared;
    return parse_pmf_on(j, shared);
  });
}

FiniteMixture parse_mixture(const json& j) {
  return translating([&] {
    GridPtr shared;
    return parse_mixture_on(j, shared);
  });
}

ProcessSpec parse_process(const json& j) {
  return translating([&] {
    const json& type = field(j, "type");
    if (!type.is_string()) throw ConfigError("process type must be a string");
    const auto name = type.get<std::string>();
    if (name == "iid") return ProcessSpec::iid(parse_pmf(field(j, "pmf")));
    if (name == "finite_definetti") return ProcessSpec::finite_definetti(parse_mixture(field(j, "mixture")));
    if (name == "beta_bernoulli") {
      return ProcessSpec::beta_bernoulli(number(field(j, "a"), "a"), number(field(j, "b"), "b"));
    }
    if (name == "diagonal") return ProcessSpec::diagonal(parse_atoms(field(j, "atoms")));
    throw ConfigError("unknown process type '" + name + "'");
  });
}

ConceptClass parse_concept_class(const json& j, GridPtr grid) {
  return translating([&] {
    const json& name_field = field(j, "class");
    if (!name_field.is_string()) throw ConfigError("class must be a string");
    const auto name = name_field.get<std::string>();
    const int declared = j.contains("declared_vc") ? static_cast<int>(unsigned_number(j["declared_vc"], "declared_vc")) : 0;
    if (j.contains("declared_vc") && declared < 1) throw ConfigError("declared_vc must be at least 1");
    if (name == "threshold") return ConceptClass(ConceptFamily::threshold, std::move(grid), 0, declared);
    if (name == "interval") return ConceptClass(ConceptFamily::interval, std::move(grid), 1, declared);
    if (name == "union_intervals") {
      const auto k = static_cast<std::size_t>(unsigned_number(field(j, "k"), "k"));
      return ConceptClass(ConceptFamily::union_intervals, std::move(grid), k, declared);
    }
    throw ConfigError("unknown concept class '" + name + "'");
  });
}

Concept parse_concept(const json& j) {
  return translating([&] {
    if (!j.is_object() || j.size() != 1) throw ConfigError("a concept is an object with exactly one key");
    if (j.contains("threshold")) return Concept::threshold(number(j["threshold"], "threshold"));
    if (j.contains("interval")) {
      const auto ab = number_list(j["interval"], "interval");
      if (ab.size() != 2) throw ConfigError("interval takes [a, b]");
      return Concept::interval(ab[0], ab[1]);
    }
    if (j.contains("union_intervals")) {
      const json& parts = j["union_intervals"];
      if (!parts.is_array()) throw ConfigError("union_intervals takes [[a, b], ...]");
      std::vector<double> endpoints;
      for (const auto& p : parts) {
        const auto ab = number_list(p, "union_intervals part");
        if (ab.size() != 2) throw ConfigError("union_intervals parts take [a, b]");
        endpoints.insert(endpoints.end(), ab.begin(), ab.end());
      }
      return Concept::union_of(std::move(endpoints));
    }
    throw ConfigError("unknown concept kind '" + j.begin().key() + "'");
  });
}

ExperimentConfig parse_config(const json& j) {
  return translating([&] {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown_keys(j, {"kind", "process", "class", "learner", "target", "n_grid", "trials", "epsilon",
                            "delta", "master_seed", "output", "workers", "flat_tolerance"});
    const json& kind_field = field(j, "kind");
    if (!kind_field.is_string()) throw ConfigError("kind must be a string");
    ExperimentConfig config(parse_experiment_kind(kind_field.get<std::string>()),
                            parse_process(field(j, "process")));

    if (j.contains("class")) config.concept_class = parse_concept_class(j["class"], config.process.grid_ptr());
    if (j.contains("learner")) {
      const json& learner = j["learner"];
      const json& rule = field(learner, "rule");
      if (!rule.is_string() || rule.get<std::string>() != "erm") throw ConfigError("learner rule must be \"erm\"");
      if (learner.contains("tie_break")) {
        if (!learner["tie_break"].is_string()) throw ConfigError("tie_break must be a string");
        config.tie_break = parse_tie_break(learner["tie_break"].get<std::string>());
      }
    }
    if (j.contains("target")) {
      const json& target = j["target"];
      if (target.is_string()) {
        if (target.get<std::string>() != "worst_case") throw ConfigError("target string must be \"worst_case\"");
      } else {
        config.target = parse_concept(target);
      }
    }

    const json& n_grid = field(j, "n_grid");
    if (!n_grid.is_array()) throw ConfigError("n_grid must be an array");
    for (const auto& n : n_grid) config.n_grid.push_back(static_cast<std::size_t>(unsigned_number(n, "n_grid entry")));
    config.trials = static_cast<std::size_t>(unsigned_number(field(j, "trials"), "trials"));
    config.epsilon = number(field(j, "epsilon"), "epsilon");
    config.delta = number(field(j, "delta"), "delta");
    config.master_seed = unsigned_number(field(j, "master_seed"), "master_seed");
    if (j.contains("output")) {
      if (!j["output"].is_string() || j["output"].get<std::string>().empty()) {
        throw ConfigError("output must be a nonempty string");
      }
      config.output = j["output"].get<std::string>();
    }
    if (j.contains("workers")) config.workers = static_cast<unsigned>(unsigned_number(j["workers"], "workers"));
    if (j.contains("flat_tolerance")) config.flat_tolerance = number(j["flat_tolerance"], "flat_tolerance");

    validate(config);
    return config;
  });
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace exlearn
