#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qromlab/attack/config.hpp"
#include "qromlab/attack/oracle_access.hpp"
#include "qromlab/boolean_poly/multilinear_poly.hpp"
#include "qromlab/boolean_poly/partial_assignment.hpp"
#include "qromlab/boolean_poly/reprogram.hpp"
#include "qromlab/info_theory/entropy.hpp"
#include "qromlab/info_theory/product_mixture.hpp"
#include "qromlab/protocols/key_agreement.hpp"

namespace qromlab::attack {

using protocols::KeyAgreement;
using protocols::QueryRecord;
using quantum_sim::Oracle;

struct HeavyQuerySet {
  double threshold = 0.0;
  std::vector<std::uint64_t> members;  // ascending

  bool contains(std::uint64_t i) const;
  bool covered_by(const QueryRecord& record) const;
};

/// {i : q_i >= threshold}.
HeavyQuerySet heavy_query_set(const std::vector<double>& weights, double threshold);

/// What Eve holds of the first message: the pk bits, or (quantum flavor) a
/// pure pk state she may copy.
struct FirstMessage {
  std::string bits;
  std::optional<quantum_sim::QuantumInput> state;
};

quantum_sim::AlgorithmInput bob_input(const KeyAgreement& ka, const FirstMessage& m0);

struct Step1Result {
  QueryRecord r_e;
  /// Sampled mode: how often each index was measured.
  std::map<std::uint64_t, std::int64_t> sample_counts;
  std::int64_t repetitions = 0;
  std::uint64_t queries = 0;
};

/// R_E = W_B with values read off H.
Step1Result step1_heavy_queries_exact(const KeyAgreement& ka, const FirstMessage& m0,
                                      const Oracle& oracle, const AttackParameters& params);

/// The measure-and-query loop, step1_reps times, through `access`.
Step1Result step1_heavy_queries_sampled(const KeyAgreement& ka, const FirstMessage& m0,
                                        OracleAccess& access, const AttackParameters& params,
                                        std::mt19937_64& rng);

/// One hypothesis (H, sk) of the joint state Eve's recovery channel is
/// built from, together with Bob's pre-measurement state in that world.
struct World {
  std::size_t oracle_index = 0;
  std::string sk;
  double weight = 0.0;
  CVector bob_state;
  std::vector<double> bob_weights;
  /// Exact mode: R_E this world would produce; empty in sampled mode.
  std::string r_e_key;
};

/// Worlds consistent with a classical first message m0, prior uniform over
/// `family` times Pr[Gen^H -> (sk, m0)]. With `exact_r_e`, each world also
/// carries its heavy set.
std::vector<World> classical_worlds(const KeyAgreement& ka, const std::vector<Oracle>& family,
                                    const std::string& m0, const AttackParameters& params,
                                    bool exact_r_e, const NumericPolicy& policy);

/// Quantum flavor: all (H, sk) with Pr[Gen^H -> sk] > 0; Bob runs on |pk(sk)>.
std::vector<World> quantum_worlds(const KeyAgreement& ka, const std::vector<Oracle>& family,
                                  const AttackParameters& params, bool exact_r_e,
                                  const NumericPolicy& policy);

/// Sampled mode: reweights by the likelihood of the step-1 samples (each
/// measured index i has probability q_i / d) and drops worlds that
/// contradict the recorded values.
std::vector<World> condition_on_samples(std::vector<World> worlds,
                                        const std::vector<Oracle>& family,
                                        const Step1Result& step1, int d);

/// Eve's recovery channel for A = sk from E = (R_E, B_1..B_j).
struct FakeKeyModel {
  std::vector<World> worlds;
  std::vector<std::string> r_e_keys;  // value index of the classical C system
  info_theory::MarkovReductionResult markov;
  info_theory::MixtureRecovery recovery;
  int sk_width = 0;
};

FakeKeyModel build_fake_key_model(std::vector<World> worlds, int sk_width,
                                  const AttackParameters& params, const AttackConfig& cfg);

struct FakeKeyDistribution {
  std::map<std::string, double> keys;
  double abort = 0.0;
};

/// Applies the channel to Eve's actual E: j copies of `bob_state` and the
/// classical record `r_e_key`.
FakeKeyDistribution fake_key_distribution(const FakeKeyModel& model, const CVector& bob_state,
                                          const std::string& r_e_key);

/// Step 3 minus the final Dec run: f, mu and the reprogrammed entries.
struct ReprogramPlan {
  bool aborted = false;
  boolean_poly::MultilinearPoly f;
  std::optional<boolean_poly::ReprogramOutcome> outcome;
  /// H~ differs from H at most here: i -> (1 - mu(i)) / 2.
  std::map<std::uint64_t, int> overrides;
};

/// f(x) = Pr[A_0^{x^{R_E}} -> (sk', m0)], or -> sk' alone when m0 is empty
/// (quantum flavor). Uses only the scheme description.
ReprogramPlan plan_reprogramming(const KeyAgreement& ka, const std::string& fake_sk,
                                 const std::string& m0, const QueryRecord& r_e,
                                 const AttackParameters& params, const NumericPolicy& policy);

boolean_poly::PartialAssignment as_assignment(const QueryRecord& record);
std::map<std::uint64_t, int> oracle_overrides(const boolean_poly::PartialAssignment& mu);

struct CaseBCertificate {
  std::vector<boolean_poly::PartialAssignment> fixers;
  std::vector<double> fixer_weights;
  int l_star = 0;
  Oracle h_prime = Oracle::zero(0);
};

/// Finds m pairwise-disjoint mu_l off SUPP(mu) and `excluded_mask`,
/// |mu_l| <= deg f, with f(x^{mu_l . mu}) != 0 at H~ (supports in ascending
/// bitmask order, signs lexicographic with +1 first), then picks the one of
/// least Dec weight. Throws InvariantViolation when fewer than m exist.
CaseBCertificate case_b_certificate(const boolean_poly::MultilinearPoly& f,
                                    const boolean_poly::PartialAssignment& mu, int m,
                                    const Oracle& h_tilde, const std::vector<double>& dec_weights,
                                    std::uint64_t excluded_mask = 0);

struct CaseBCheck {
  double tv = 0.0;                // TV(Dec^{H'}, Dec^{H~})
  double instance_bound = 0.0;    // 8 sqrt(d) sqrt(sum_{SUPP(mu_l*)} w_i)
  double pigeonhole_bound = 0.0;  // 8 sqrt(d) sqrt(d / m)
  bool holds = false;             // tv <= instance_bound + 1e-8
  bool h_prime_valid = false;     // f(H') != 0
};

/// Dec's input for a classical or quantum ciphertext.
quantum_sim::AlgorithmInput dec_input(const KeyAgreement& ka, const std::string& sk,
                                      const std::string& m1, const CMatrix* m1_state);

CaseBCheck check_case_b(const KeyAgreement& ka, const ReprogramPlan& plan,
                        const CaseBCertificate& cert, const Oracle& h_tilde,
                        const quantum_sim::AlgorithmInput& dec_in, const AttackParameters& params);

}  // namespace qromlab::attack
