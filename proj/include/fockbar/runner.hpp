#ifndef FOCKBAR_RUNNER_HPP
#define FOCKBAR_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockbar/discrete.hpp"

namespace fockbar {

inline constexpr int kSchemaVersion = 1;

// One experiment instance: a weight/embedding pair plus sampling controls.
struct ExperimentConfig {
  std::uint32_t seed = 1234;
  WeightSpec weight;
  EmbeddingSpec embed;
  std::vector<int> p_values{8, 16, 32};
  int degree = 0;      // ambient cutoff; 0 = automatic
  int quad_order = 0;  // per-axis order; 0 = automatic (degree + 10)
  int order = 1;       // expansion order for the symbolic engine
  int num_pairs = 24;  // sample pairs for comparisons and fits
  int num_g = 20;      // random boundary data draws for sup-norm ratios

  int resolve_degree(int p) const;
  int resolve_quad(int p) const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;
};

// A named pass/fail observation with its measured error.
struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
};

struct RunReport {
  nlohmann::json summary;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Modes of the command-line tool. Each writes <out>/summary.json; the
// numerical modes also write <out>/results.csv.
RunReport run_verify(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_expand(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_simulate(const ExperimentConfig& cfg, const std::string& out_dir);
RunReport run_decay(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace fockbar

#endif  // FOCKBAR_RUNNER_HPP
