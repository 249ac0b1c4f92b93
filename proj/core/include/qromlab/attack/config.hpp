#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qromlab/info_theory/recovery.hpp"
#include "qromlab/numeric_policy.hpp"

namespace qromlab::attack {

/// exact: Eve's sampling loops are replaced by exact distributions and the
/// attack reports Pr[k_E = k_B]. sampled: one trial with every oracle access
/// going through OracleAccess.
enum class AttackMode { exact, sampled };
std::string to_string(AttackMode mode);
AttackMode attack_mode_from_string(const std::string& s);

/// Unset fields take their default formula in (n, d, epsilon).
struct AttackConfig {
  double epsilon = 0.25;
  std::optional<int> m;                    // ceil(d^2 / eps^2)
  std::optional<std::int64_t> step1_reps;  // ceil(d^6/eps^4 * ln(d^6/eps^5))
  std::optional<int> copies_t;             // ceil(4 d n / eps^2)
  std::optional<double> heavy_threshold;   // eps^4 / d^5
  AttackMode mode = AttackMode::exact;
  std::uint64_t seed = 0;
  info_theory::RecoveryKind recovery = info_theory::RecoveryKind::petz;
  info_theory::RotationGrid grid;
  NumericPolicy policy;

  /// Throws InvalidArgument on epsilon outside (0, 1) or nonpositive overrides.
  void validate() const;
};

/// The configuration with every formula evaluated.
struct AttackParameters {
  int n = 0;
  int d = 0;
  double epsilon = 0.0;
  int m = 0;
  std::int64_t step1_reps = 0;
  int copies_t = 0;
  double heavy_threshold = 0.0;
  /// Names of the fields that were overridden rather than computed.
  std::vector<std::string> overridden;
};

AttackParameters resolve(const AttackConfig& cfg, int n, int d);

int default_m(int d, double epsilon);
std::int64_t default_step1_reps(int d, double epsilon);
int default_copies(int d, int n, double epsilon);
double default_heavy_threshold(int d, double epsilon);

/// d^7 ln(d/eps) / eps^4 + n d^2 / eps^2, the query count the budget is
/// measured against (natural log).
double query_formula(int n, int d, double epsilon);

nlohmann::json to_json(const AttackConfig& cfg);
AttackConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AttackParameters& p);

}  // namespace qromlab::attack
