#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlab/bounds.hpp"
#include "radlab/generators.hpp"

namespace radlab {

/// Batch verification plan. Replaying the same config produces an identical
/// report regardless of the worker count.
struct SweepConfig {
  // Generator templates: "ginibre" (dims cycle through `dims`),
  // "ginibre:4" (fixed dim), or "named:ex_2_11".
  std::vector<std::string> generators = {"ginibre", "normal"};
  std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8};
  int count = 100;  // samples per template
  std::vector<std::string> bounds = {"all"};
  std::vector<double> r_values = {1.0, 1.5, 2.0};
  std::vector<double> norm_power_r = {0.25, 0.5, 0.75, 1.0};
  double radius_tol_rel = 1e-6;
  double slack_abs = tol::slack_abs;
  double slack_rel = tol::slack_rel;
  int threads = 0;  // 0: RADIUS_LAB_THREADS env or hardware concurrency
  std::uint64_t seed = 0;
  std::string out;

  static SweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct BoundStats {
  std::string id;
  long evaluated = 0;
  long applicable = 0;
  long passed = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::string worst_spec;
};

struct SweepReport {
  SweepConfig config;
  std::vector<BoundStats> per_bound;
  nlohmann::json violations = nlohmann::json::array();
  long samples = 0;

  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

SweepReport run_sweep(const SweepConfig& config);

int resolve_thread_count(int requested);

}  // namespace radlab
