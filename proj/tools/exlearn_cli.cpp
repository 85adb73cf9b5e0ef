// exlearn: command-line front end for the exchangeable-learning experiments.
//
//   exlearn run      --config <path> [--seed <u64>] [--workers <n>] [--out <dir>]
//   exlearn bounds   --d <int> --delta <list> --epsilon <list> --formula <name>
//   exlearn vcdim    --class <spec> --grid <list>
//   exlearn gc       --config <path>
//   exlearn validate --config <path>
//
// Exit codes: 0 success, 1 configuration or usage error, 2 failed verdict.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exlearn/bounds.hpp"
#include "exlearn/concepts.hpp"
#include "exlearn/config.hpp"
#include "exlearn/errors.hpp"
#include "exlearn/experiments.hpp"
#include "exlearn/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kAssertionFailed = 2;
constexpr std::size_t kMaxProbeGrid = 10;
constexpr int kMaxVcCap = 6;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw exlearn::ConfigError(std::string("bad number '") + item + "' in " + what);
    out.push_back(v);
  }
  return out;
}

// "threshold", "interval", "union_intervals:<k>", or a JSON class object.
exlearn::ConceptClass parse_class_spec(const std::string& spec, exlearn::GridPtr grid) {
  nlohmann::json j;
  if (!spec.empty() && spec.front() == '{') {
    try {
      j = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::exception& e) {
      throw exlearn::ConfigError(std::string("malformed class spec: ") + e.what());
    }
  } else if (auto colon = spec.find(':'); colon != std::string::npos) {
    j = {{"class", spec.substr(0, colon)}};
    try {
      j["k"] = std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw exlearn::ConfigError("bad interval count in class spec '" + spec + "'");
    }
  } else {
    j = {{"class", spec}};
  }
  return exlearn::parse_concept_class(j, std::move(grid));
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<unsigned> workers,
            const std::string& out_dir) {
  auto config = exlearn::load_config(config_path);
  if (seed) config.master_seed = *seed;
  if (workers) config.workers = *workers;
  const auto artifacts = exlearn::run_experiment(config);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (config.output + ".csv");
  const auto summary_path = dir / (config.output + ".summary.json");
  std::ofstream(csv_path, std::ios::binary) << artifacts.csv;
  std::ofstream(summary_path, std::ios::binary) << artifacts.summary.dump(2) << '\n';
  std::cout << artifacts.summary.dump(2) << '\n';
  std::cerr << "wrote " << csv_path.string() << " and " << summary_path.string() << '\n';
  return artifacts.passed ? kOk : kAssertionFailed;
}

int cmd_bounds(int d, const std::string& deltas_text, const std::string& epsilons_text, const std::string& formula_name) {
  std::cout << "d,delta,epsilon,n_pac,n_predictive\n";
  const auto formula = exlearn::parse_bound_formula(formula_name);
  const auto deltas = parse_list(deltas_text, "--delta");
  const auto epsilons = parse_list(epsilons_text, "--epsilon");
  if (deltas.empty() || epsilons.empty()) throw exlearn::DomainError("empty --delta or --epsilon list");
  const exlearn::BoundSpec base{d, exlearn::BoundFormula::vidyasagar78};
  for (double delta : deltas) {
    for (double epsilon : epsilons) {
      const auto n_pac = exlearn::vidyasagar_bound(d, delta, epsilon);
      const auto n_predictive = formula == exlearn::BoundFormula::vidyasagar78
                                    ? exlearn::predictive_transform(base.function(), delta, epsilon)
                                    : exlearn::corollary_bound(d, delta, epsilon);
      std::cout << d << ',' << exlearn::format_number(delta) << ',' << exlearn::format_number(epsilon) << ','
                << n_pac << ',' << n_predictive << '\n';
    }
  }
  return kOk;
}

int cmd_vcdim(const std::string& class_spec, const std::string& grid_text) {
  auto points = parse_list(grid_text, "--grid");
  if (points.size() > kMaxProbeGrid) throw exlearn::SizeGuard("vcdim: probe grid is limited to 10 points");
  const auto grid = exlearn::make_grid(std::move(points));
  const auto cls = parse_class_spec(class_spec, grid);
  const int cap = std::min<int>(kMaxVcCap, static_cast<int>(grid->size()));
  const int found = exlearn::vc_dimension_bruteforce(cls, *grid, cap);
  const bool match = found == cls.declared_vc();
  std::cout << "class," << cls.describe() << "\n"
            << "grid_points," << grid->size() << "\n"
            << "declared_vc," << cls.declared_vc() << "\n"
            << "bruteforce_vc," << found << "\n"
            << "verdict," << (match ? "match" : "mismatch") << "\n";
  return match ? kOk : kAssertionFailed;
}

int cmd_gc(const std::string& config_path) {
  const auto config = exlearn::load_config(config_path);
  const auto result = exlearn::run_gc_curve(config);
  exlearn::write_curve_csv(std::cout, result.curve);
  return kOk;
}

int cmd_validate(const std::string& config_path) {
  const auto config = exlearn::load_config(config_path);
  std::cout << "valid " << exlearn::to_string(config.kind) << " config: process="
            << exlearn::to_string(config.process.kind()) << " trials=" << config.trials
            << " n_grid=" << config.n_grid.size() << " entries\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictive PAC learning experiments under exchangeable inputs"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("--config", config_path, "Experiment JSON config")->required();
  run->add_option("--seed", seed, "Override master_seed");
  run->add_option("--workers", workers, "Worker threads (default: available parallelism)");
  run->add_option("--out", out_dir, "Output directory");

  int d = 1;
  std::string deltas;
  std::string epsilons;
  std::string formula = "vidyasagar78";
  auto* bounds = app.add_subcommand("bounds", "Print sample-complexity bounds as CSV");
  bounds->add_option("--d", d, "VC dimension")->required();
  bounds->add_option("--delta", deltas, "Comma-separated confidence parameters")->required();
  bounds->add_option("--epsilon", epsilons, "Comma-separated accuracy parameters")->required();
  bounds->add_option("--formula", formula, "vidyasagar78 | corollary_predictive");

  std::string class_spec;
  std::string grid_text;
  auto* vcdim = app.add_subcommand("vcdim", "Brute-force the VC dimension of a class on a probe grid");
  vcdim->add_option("--class", class_spec, "threshold | interval | union_intervals:<k> | JSON object")->required();
  vcdim->add_option("--grid", grid_text, "Comma-separated probe points (at most 10)")->required();

  auto* gc = app.add_subcommand("gc", "Emit Glivenko-Cantelli deviation curves as CSV");
  gc->add_option("--config", config_path, "Experiment JSON config")->required();

  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", config_path, "Experiment JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, seed, workers, out_dir);
    if (*bounds) return cmd_bounds(d, deltas, epsilons, formula);
    if (*vcdim) return cmd_vcdim(class_spec, grid_text);
    if (*gc) return cmd_gc(config_path);
    if (*validate) return cmd_validate(config_path);
  } catch (const exlearn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
