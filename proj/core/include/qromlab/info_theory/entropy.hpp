#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qromlab/info_theory/multipartite_state.hpp"
#include "qromlab/numeric_policy.hpp"
#include "qromlab/quantum_sim/oracle.hpp"
#include "qromlab/quantum_sim/query_algorithm.hpp"
#include "qromlab/quantum_sim/simulator.hpp"

namespace qromlab::info_theory {

/// S of the reduced state on `labels`, in bits. Empty labels give 0.
double von_neumann_entropy(const MultipartiteState& state, const Labels& labels,
                           const NumericPolicy& policy = default_policy());

/// I(A:B|E) = S(AE) + S(BE) - S(ABE) - S(E), raw value in bits.
double cmi(const MultipartiteState& state, const Labels& a, const Labels& b, const Labels& e,
           const NumericPolicy& policy = default_policy());

struct CmiReport {
  double value = 0.0;
  /// value < 0 but within cmi_negative_tol (numerical noise around SSA).
  bool negative_within_tolerance = false;
  /// value < -cmi_negative_tol: a genuine strong-subadditivity failure.
  bool violates_ssa = false;
};
CmiReport classify_cmi(double value, const NumericPolicy& policy = default_policy());

struct SsaCheck {
  bool holds = false;
  double slack = 0.0;
};

/// S(AC) + S(AB) - S(ABC) - S(A), optionally with every term also
/// conditioned on D. Holds iff slack >= -1e-7.
SsaCheck check_strong_subadditivity(const MultipartiteState& state, const Labels& a,
                                    const Labels& b, const Labels& c,
                                    const std::optional<Labels>& d = std::nullopt,
                                    const NumericPolicy& policy = default_policy());

/// Terms I(B_i : A | C, B_1..B_{i-1}) for i = 1..t.
std::vector<double> chain_rule_decomposition(const MultipartiteState& state, const Labels& a,
                                             const Labels& c, const Labels& b_labels,
                                             const NumericPolicy& policy = default_policy());

/// 2 d (n + 1) bits.
double entropy_accumulation_bound(const quantum_sim::QueryAlgorithm& alg);

/// S of `registers` after running alg, averaged over the uniform oracle on
/// n_in qubits (exhaustive over all 2^(2^n) oracles).
double oracle_averaged_entropy(const quantum_sim::QueryAlgorithm& alg,
                               const quantum_sim::AlgorithmInput& input,
                               const std::vector<std::string>& registers,
                               const NumericPolicy& policy = default_policy());

struct MarkovReductionResult {
  int j = 0;
  double cmi_value = 0.0;
  double entropy_S_A = 0.0;
  int t = 0;
  /// I(B_t : A | C, B_1..B_j) for every j in [0, t-1].
  std::vector<double> prefix_cmis;
};

/// Smallest j with prefix_cmi(j) <= S(A)/t + 1e-7. `prefix_cmi(j)` evaluates
/// I(B_t : A | C, B_1..B_j). Throws InvariantViolation if none qualifies.
/// With scan_all unset, evaluation stops at the selected j.
MarkovReductionResult select_markov_prefix(double entropy_S_A, int t,
                                           const std::function<double(int)>& prefix_cmi,
                                           bool scan_all = true);

/// Dense version: verifies swap symmetry of B_1..B_t, then selects j.
MarkovReductionResult select_markov_prefix(const MultipartiteState& state, const Labels& a,
                                           const Labels& c, const Labels& b_labels,
                                           const NumericPolicy& policy = default_policy());

/// Largest |rho - swap(rho)| entry over all transpositions (B_1, B_k).
double permutation_asymmetry(const MultipartiteState& state, const Labels& b_labels);

}  // namespace qromlab::info_theory
