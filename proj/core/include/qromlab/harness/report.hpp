#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qromlab/attack/attack.hpp"
#include "qromlab/numeric_policy.hpp"

namespace qromlab::harness {

/// Every floating-point leaf rounded to a multiple of 1e-12, so identical
/// runs serialize byte-identically across platforms.
nlohmann::json rounded(const nlohmann::json& j);
double round12(double x);

/// One aggregate row of an attack grid. `status` is "ok" or "failed".
struct ReportRow {
  std::string scheme;
  int n = 0;
  double epsilon = 0.0;
  std::string mode;
  std::size_t runs = 0;
  double success_rate = 0.0;
  double min_success = 0.0;
  double mean_cmi = 0.0;
  double mean_mu_size = 0.0;
  double case_a_fraction = 0.0;
  double abort_rate = 0.0;
  double queries = 0.0;      // mean per trial; 0 in exact mode
  double max_queries = 0.0;
  double query_budget = 0.0;
  double view_support_violation = 0.0;
  double heavy_miss_rate = 0.0;
  std::string status = "ok";
  std::string error;
  nlohmann::json params;
  NumericPolicy policy;
};

ReportRow make_row(const attack::AttackSummary& s, int n, const nlohmann::json& params,
                   double query_budget, const NumericPolicy& policy);
ReportRow failed_row(const std::string& scheme, int n, double epsilon, const std::string& mode,
                     const std::string& error, const NumericPolicy& policy);

nlohmann::json to_json(const ReportRow& row);
ReportRow row_from_json(const nlohmann::json& j);

/// scheme,epsilon,success_rate,mean_cmi,mean_mu_size,case_a_fraction,queries,
/// then n, mode, runs, min_success, abort_rate, status and the policy as JSON.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_line(const ReportRow& row);
void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

/// Per-trial record: {scheme, n, d, epsilon, mode, case_tag, success, cmi,
/// mu_size, query_count, seed, ...} plus the policy snapshot.
nlohmann::json trial_record(const attack::AttackResult& r, const NumericPolicy& policy);

/// Appends JSON lines to one file; safe to call from several threads.
class JsonlSink {
 public:
  explicit JsonlSink(const std::filesystem::path& path, bool append = false);
  void write(const nlohmann::json& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace qromlab::harness
