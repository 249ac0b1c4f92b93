#include "qromlab/harness/report.hpp"

#include <cmath>
#include <sstream>

#include "qromlab/error.hpp"

namespace qromlab::harness {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

nlohmann::json rounded(const nlohmann::json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : j) out.push_back(rounded(v));
    return out;
  }
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

ReportRow make_row(const attack::AttackSummary& s, int n, const nlohmann::json& params,
                   double query_budget, const NumericPolicy& policy) {
  ReportRow r;
  r.scheme = s.scheme;
  r.n = n;
  r.epsilon = s.epsilon;
  r.mode = attack::to_string(s.mode);
  r.runs = s.runs;
  r.success_rate = s.success_rate;
  r.min_success = s.min_success;
  r.mean_cmi = s.mean_cmi;
  r.mean_mu_size = s.mean_mu_size;
  r.case_a_fraction = s.case_a_fraction;
  r.abort_rate = s.abort_rate;
  r.queries = s.mean_queries;
  r.max_queries = s.max_queries;
  r.query_budget = query_budget;
  r.view_support_violation = s.view_support_violation;
  r.heavy_miss_rate = s.heavy_miss_rate;
  r.params = params;
  r.policy = policy;
  return r;
}

ReportRow failed_row(const std::string& scheme, int n, double epsilon, const std::string& mode,
                     const std::string& error, const NumericPolicy& policy) {
  ReportRow r;
  r.scheme = scheme;
  r.n = n;
  r.epsilon = epsilon;
  r.mode = mode;
  r.status = "failed";
  r.error = error;
  r.policy = policy;
  return r;
}

nlohmann::json to_json(const ReportRow& r) {
  nlohmann::json j{{"scheme", r.scheme},
                   {"n", r.n},
                   {"epsilon", r.epsilon},
                   {"mode", r.mode},
                   {"runs", r.runs},
                   {"success_rate", r.success_rate},
                   {"min_success", r.min_success},
                   {"mean_cmi", r.mean_cmi},
                   {"mean_mu_size", r.mean_mu_size},
                   {"case_a_fraction", r.case_a_fraction},
                   {"abort_rate", r.abort_rate},
                   {"queries", r.queries},
                   {"max_queries", r.max_queries},
                   {"query_budget", r.query_budget},
                   {"view_support_violation", r.view_support_violation},
                   {"heavy_miss_rate", r.heavy_miss_rate},
                   {"status", r.status},
                   {"params", r.params},
                   {"policy", qromlab::to_json(r.policy)}};
  if (!r.error.empty()) j["error"] = r.error;
  return rounded(j);
}

namespace {

NumericPolicy policy_from_json(const nlohmann::json& j) {
  NumericPolicy p;
  p.unitarity_tol = j.value("unitarity_tol", p.unitarity_tol);
  p.norm_tol = j.value("norm_tol", p.norm_tol);
  p.probability_sum_tol = j.value("probability_sum_tol", p.probability_sum_tol);
  p.eigenvalue_clamp = j.value("eigenvalue_clamp", p.eigenvalue_clamp);
  p.psd_tol = j.value("psd_tol", p.psd_tol);
  p.support_threshold = j.value("support_threshold", p.support_threshold);
  p.coeff_zero_rel = j.value("coeff_zero_rel", p.coeff_zero_rel);
  p.pinv_cutoff = j.value("pinv_cutoff", p.pinv_cutoff);
  p.cmi_negative_tol = j.value("cmi_negative_tol", p.cmi_negative_tol);
  p.permutation_tol = j.value("permutation_tol", p.permutation_tol);
  p.channel_tp_tol = j.value("channel_tp_tol", p.channel_tp_tol);
  return p;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double x) { return nlohmann::json(round12(x)).dump(); }

}  // namespace

ReportRow row_from_json(const nlohmann::json& j) {
  ReportRow r;
  r.scheme = j.at("scheme").get<std::string>();
  r.n = j.at("n").get<int>();
  r.epsilon = j.at("epsilon").get<double>();
  r.mode = j.at("mode").get<std::string>();
  r.runs = j.value("runs", std::size_t{0});
  r.success_rate = j.value("success_rate", 0.0);
  r.min_success = j.value("min_success", 0.0);
  r.mean_cmi = j.value("mean_cmi", 0.0);
  r.mean_mu_size = j.value("mean_mu_size", 0.0);
  r.case_a_fraction = j.value("case_a_fraction", 0.0);
  r.abort_rate = j.value("abort_rate", 0.0);
  r.queries = j.value("queries", 0.0);
  r.max_queries = j.value("max_queries", 0.0);
  r.query_budget = j.value("query_budget", 0.0);
  r.view_support_violation = j.value("view_support_violation", 0.0);
  r.heavy_miss_rate = j.value("heavy_miss_rate", 0.0);
  r.status = j.value("status", std::string("ok"));
  r.error = j.value("error", std::string());
  r.params = j.value("params", nlohmann::json::object());
  if (j.contains("policy")) r.policy = policy_from_json(j.at("policy"));
  return r;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "scheme",  "epsilon", "success_rate", "mean_cmi",    "mean_mu_size",
      "case_a_fraction", "queries", "n",   "mode",        "runs",
      "min_success", "abort_rate", "status", "policy"};
  return cols;
}

std::string csv_header() {
  std::string s;
  for (const auto& c : csv_columns()) s += (s.empty() ? "" : ",") + c;
  return s;
}

std::string csv_line(const ReportRow& r) {
  std::ostringstream os;
  os << csv_escape(r.scheme) << ',' << num(r.epsilon) << ',' << num(r.success_rate) << ','
     << num(r.mean_cmi) << ',' << num(r.mean_mu_size) << ',' << num(r.case_a_fraction) << ','
     << num(r.queries) << ',' << r.n << ',' << r.mode << ',' << r.runs << ','
     << num(r.min_success) << ',' << num(r.abort_rate) << ',' << r.status << ','
     << csv_escape(rounded(qromlab::to_json(r.policy)).dump());
  return os.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

nlohmann::json trial_record(const attack::AttackResult& r, const NumericPolicy& policy) {
  nlohmann::json j = attack::to_json(r);
  j["policy"] = qromlab::to_json(policy);
  return rounded(j);
}

JsonlSink::JsonlSink(const std::filesystem::path& path, bool append) : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, append ? std::ios::app : std::ios::trunc);
  if (!out_) throw InvalidArgument("cannot write " + path.string());
}

void JsonlSink::write(const nlohmann::json& record) {
  std::lock_guard lock(mutex_);
  out_ << record.dump() << '\n';
  out_.flush();
}

}  // namespace qromlab::harness
