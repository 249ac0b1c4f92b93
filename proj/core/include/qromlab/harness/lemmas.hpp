#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace qromlab::harness {

/// Knobs shared by the suites; each suite reads the ones it understands and
/// falls back to its own defaults.
struct LemmaParams {
  std::optional<int> N;       // variables (poly suites)
  std::optional<int> trials;
  std::optional<int> n;       // oracle input qubits
  std::optional<int> d;       // queries (bbbv upper limit)
  std::optional<int> m;
  std::optional<int> t;       // copies (perm-invariance)
  std::optional<double> epsilon;
  std::optional<std::string> scheme;
  std::vector<int> dims;      // ssa subsystem dims
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct LemmaReport {
  std::string id;
  bool passed = false;
  int checks = 0;
  int failures = 0;
  /// min over checks of (bound - measured); negative means a violation.
  double worst_slack = 0.0;
  double seconds = 0.0;
  std::vector<std::string> failure_samples;  // first few failures
  nlohmann::json details = nlohmann::json::object();
};

/// support, bbbv, entropy-bound, perm-invariance, chain-rule, ssa,
/// poly-degree, alon, reprogram, fr-recovery, wb, view, key-compatible.
const std::vector<std::string>& lemma_ids();
bool is_lemma_id(const std::string& id);
/// One line per suite with its parameters and defaults.
std::string lemma_usage();

/// Throws InvalidArgument for an unknown id.
LemmaReport verify_lemma(const std::string& id, const LemmaParams& params = {});

nlohmann::json to_json(const LemmaReport& r);

}  // namespace qromlab::harness
