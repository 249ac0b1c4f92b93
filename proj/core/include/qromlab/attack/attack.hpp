#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qromlab/attack/config.hpp"
#include "qromlab/attack/steps.hpp"
#include "qromlab/protocols/key_agreement.hpp"

namespace qromlab::attack {

/// One (sk, m0, kB, m1, sk') branch of an exact-mode run.
struct AttackBranch {
  std::string sk;
  std::string m0;
  int k_b = 0;
  std::string m1;  // empty for a quantum ciphertext
  std::string fake_sk;  // empty when Eve aborted in step 2
  double probability = 0.0;
  bool aborted = false;
  boolean_poly::ReprogramCase case_tag = boolean_poly::ReprogramCase::A;
  int mu_size = 0;
  double success = 0.0;  // Pr[k_E = k_B | branch]
  bool view_in_support = true;
  QueryRecord r_e;
  /// Entries where H~ differs from H at most (empty when aborted).
  std::map<std::uint64_t, int> overrides;
};

struct QueryCounts {
  std::uint64_t step1 = 0;
  std::uint64_t step2 = 0;
  std::uint64_t step3 = 0;
  double budget = 0.0;  // 10 x query_formula
  std::uint64_t total() const { return step1 + step2 + step3; }
};

struct AttackDiagnostics {
  // Averages are over branches, weighted by probability.
  double cmi = 0.0;
  double recovery_td = 0.0;
  double max_recovery_td = 0.0;
  double fr_bound = 0.0;
  double entropy_S_A = 0.0;
  int markov_j = 0;
  double mean_mu_size = 0.0;
  int max_mu_size = 0;
  std::size_t r_e_size = 0;
  std::size_t heavy_set_size = 0;
  bool heavy_covered = true;  // W_B within R_E
  /// TV(B^{H~}(m0), B^H(m0)) and 8 sqrt(d) sqrt(sum_{H~ != H} q_i), worst slack.
  double bob_tv = 0.0;
  double bob_tv_bound = 0.0;
  bool bob_closeness_holds = true;
  double view_support_violation = 0.0;
  std::vector<CaseBCheck> case_b_checks;
  /// Quantum flavor: TD between (sk', |m0>) and (sk, |m0>).
  std::optional<double> uncompute_td;
  std::optional<QueryCounts> queries;
};

struct AttackResult {
  std::string scheme;
  int n = 0;
  AttackMode mode = AttackMode::exact;
  AttackParameters params;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  Oracle oracle = Oracle::zero(0);

  double success_probability = 0.0;
  double abort_probability = 0.0;
  double case_a_probability = 0.0;

  /// Sampled mode: the trial's outcome. Exact mode: the most likely branch.
  int k_e = -1;
  int k_b = 0;
  bool success = false;
  boolean_poly::ReprogramCase case_tag = boolean_poly::ReprogramCase::A;
  bool aborted = false;

  AttackDiagnostics diagnostics;
  std::vector<AttackBranch> branches;
};

/// Eve's precomputation for one scheme and configuration. Recovery models
/// and reprogramming plans depend only on public data and are cached, so
/// sweeping many oracles through one session is cheap. Thread safe.
class AttackSession {
 public:
  /// Checks perfect completeness; throws InvalidArgument otherwise.
  AttackSession(protocols::QPKEScheme scheme, AttackConfig cfg, unsigned jobs = 1);

  const KeyAgreement& ka() const { return ka_; }
  const AttackConfig& config() const { return cfg_; }
  const AttackParameters& params() const { return params_; }
  const std::vector<Oracle>& family() const { return family_; }

  /// One run against `oracle`: exact distribution, or one sampled trial
  /// with randomness drawn from (seed, trial).
  AttackResult run(const Oracle& oracle, std::uint64_t trial = 0) const;

 private:
  AttackResult run_exact_classical(const Oracle& oracle) const;
  AttackResult run_exact_quantum(const Oracle& oracle) const;
  AttackResult run_sampled(const Oracle& oracle, std::uint64_t trial) const;

  struct MessageInfo;
  const FakeKeyModel& exact_model(const std::string& m0) const;
  const MessageInfo& message_info(const std::string& m0) const;
  const ReprogramPlan& plan(const std::string& fake_sk, const std::string& m0,
                            const QueryRecord& r_e) const;

  KeyAgreement ka_;
  AttackConfig cfg_;
  AttackParameters params_;
  std::vector<Oracle> family_;

  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const FakeKeyModel>> models_;
  mutable std::map<std::string, std::shared_ptr<const MessageInfo>> messages_;
  mutable std::map<std::string, std::shared_ptr<const ReprogramPlan>> plans_;
};

/// Checks completeness, then runs Eve against `oracle`.
AttackResult run_attack(const protocols::QPKEScheme& scheme, const Oracle& oracle,
                        const AttackConfig& cfg);

/// The quantum-public-key pipeline. Refuses a pkgen that queries H; a
/// classical-pk scheme runs the ordinary pipeline.
AttackResult attack_quantum_pk(const protocols::QPKEScheme& scheme, const Oracle& oracle,
                               const AttackConfig& cfg);

/// Means over a set of runs (e.g. one per oracle of the family).
struct AttackSummary {
  std::string scheme;
  double epsilon = 0.0;
  AttackMode mode = AttackMode::exact;
  std::size_t runs = 0;
  double success_rate = 0.0;
  double min_success = 1.0;
  double abort_rate = 0.0;
  double case_a_fraction = 0.0;
  double mean_cmi = 0.0;
  double mean_mu_size = 0.0;
  double mean_queries = 0.0;
  double max_queries = 0.0;
  double view_support_violation = 0.0;
  double heavy_miss_rate = 0.0;
};

AttackSummary summarize(const std::vector<AttackResult>& results);

/// Runs the session over every oracle of the scheme's family.
std::vector<AttackResult> run_over_family(const AttackSession& session, unsigned jobs = 1,
                                          std::uint64_t trial = 0);

nlohmann::json to_json(const AttackResult& r, bool with_branches = false);
nlohmann::json to_json(const AttackSummary& s);

}  // namespace qromlab::attack
