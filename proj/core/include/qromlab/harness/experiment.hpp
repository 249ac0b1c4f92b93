#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qromlab/attack/config.hpp"
#include "qromlab/error.hpp"
#include "qromlab/harness/report.hpp"

namespace qromlab::harness {

/// Spec validation failure; `path` locates the field, e.g. "schemes[1]".
class SpecError : public InvalidArgument {
 public:
  SpecError(std::string path, const std::string& message)
      : InvalidArgument(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct OracleSelection {
  /// 0 means every oracle of the scheme's family.
  std::size_t sample = 0;
};

/// JSON form:
///   {"schemes": ["S1"], "n": 2 | [1, 2], "d": 1, "epsilons": [0.1, 0.25],
///    "oracles": "all" | {"sample": 4}, "mode": "exact" | "sampled",
///    "seed": 0, "seeds": 1, "m": 4, "step1_reps": 100, "copies_t": 8,
///    "heavy_threshold": 0.01, "recovery": "petz", "jobs": 1, "out_dir": "out"}
/// "scheme" may stand in for a one-element "schemes"; "epsilon" likewise.
/// Only "schemes" and "epsilons" are required.
struct ExperimentSpec {
  std::vector<std::string> schemes;
  std::vector<int> ns{2};
  std::optional<int> d;
  std::vector<double> epsilons;
  OracleSelection oracles;
  attack::AttackMode mode = attack::AttackMode::exact;
  std::uint64_t seed = 0;
  int seeds = 1;  // sampled trials per oracle
  std::optional<int> m;
  std::optional<std::int64_t> step1_reps;
  std::optional<int> copies_t;
  std::optional<double> heavy_threshold;
  info_theory::RecoveryKind recovery = info_theory::RecoveryKind::petz;
  unsigned jobs = 1;
  std::string out_dir;

  /// Throws SpecError naming the offending field.
  void validate() const;
  attack::AttackConfig attack_config(double epsilon) const;
};

ExperimentSpec spec_from_json(const nlohmann::json& j);
ExperimentSpec load_spec(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentSpec& spec);

struct GridPoint {
  std::string scheme;
  int n = 0;
  double epsilon = 0.0;
};

/// schemes x ns x epsilons, in that nesting order.
std::vector<GridPoint> grid(const ExperimentSpec& spec);
/// File-name-safe identifier of a grid point, e.g. "S1_n2_eps0.25_exact".
std::string row_key(const GridPoint& p, attack::AttackMode mode);

struct PointResult {
  ReportRow row;
  std::vector<nlohmann::json> records;  // one per trial, in trial order
};

/// Runs the attack at one grid point over the selected oracles (and seeds
/// in sampled mode). Throws on failure.
PointResult run_point(const ExperimentSpec& spec, const GridPoint& point);

struct GridRunOptions {
  /// Skip points whose rows/<key>.done marker exists.
  bool resume = false;
  std::function<void(const GridPoint&, const std::string& status)> progress;
};

struct GridReport {
  std::vector<ReportRow> rows;  // grid order, failed rows included
  std::size_t completed = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
};

/// Runs every grid point, writing under out_dir:
///   rows/<key>.done    the aggregate row (JSON), written on success
///   rows/<key>.failed  the failure row, removed once the point succeeds
///   records/<key>.jsonl, records.jsonl, summary.csv, summary.json
/// A failing point is recorded and the run continues.
GridReport run_grid(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                    const GridRunOptions& options = {});

}  // namespace qromlab::harness
