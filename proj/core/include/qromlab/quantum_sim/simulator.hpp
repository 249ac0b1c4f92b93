#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qromlab/linalg.hpp"
#include "qromlab/numeric_policy.hpp"
#include "qromlab/quantum_sim/distribution.hpp"
#include "qromlab/quantum_sim/oracle.hpp"
#include "qromlab/quantum_sim/query_algorithm.hpp"
#include "qromlab/quantum_sim/sim_state.hpp"

namespace qromlab::quantum_sim {

/// A quantum state handed to a group of quantum-input registers. Exactly one
/// of `pure` / `density` is used (pure when density is empty).
struct QuantumInput {
  std::vector<std::string> registers;
  CVector pure;
  CMatrix density;
};

struct AlgorithmInput {
  std::map<std::string, std::uint64_t> classical;
  std::vector<QuantumInput> quantum;
};

/// Parses a bit string covering the InputSpec's classical inputs in order.
AlgorithmInput parse_classical_input(const QueryAlgorithm& alg, const std::string& bits);

/// Initial state: classical inputs loaded, quantum inputs tensored in, all
/// other registers |0>. Mixed iff any quantum input is given as a density.
SimState initial_state(const QueryAlgorithm& alg, const AlgorithmInput& input);

/// U_H on the named wires: |i, b> -> |i, b xor H(i)>.
SimState apply_oracle(const SimState& state, const Oracle& oracle, const std::string& query_input,
                      const std::string& query_output);

/// Final pre-measurement state after U_{d+1}.
SimState run(const QueryAlgorithm& alg, const Oracle& oracle, const AlgorithmInput& input);
SimState run(const QueryAlgorithm& alg, const Oracle& oracle, const std::string& input_bits);

/// The state immediately before the t-th oracle call (1 <= t <= d).
SimState run_until_query(const QueryAlgorithm& alg, const Oracle& oracle,
                         const AlgorithmInput& input, int t);

struct QueryWeightProfile {
  std::vector<double> weights;  // q_i, length 2^n
  int d = 0;
  double total() const;
};

/// q_i = sum over the d pre-query states of the squared amplitude with input
/// register equal to i.
QueryWeightProfile query_weights(const QueryAlgorithm& alg, const Oracle& oracle,
                                 const AlgorithmInput& input);

/// 2 sqrt(d) sqrt(sum_{i : a(i) != b(i)} q_i), with q measured against oracle_a.
double bbbv_deviation_bound(const QueryWeightProfile& profile, const Oracle& oracle_a,
                            const Oracle& oracle_b, int d);

/// || |psi> - |phi> || for two pure states.
double state_deviation(const SimState& psi, const SimState& phi);

/// Exact Born-rule distribution of the concatenated registers.
OutputDistribution measure(const SimState& state, const std::vector<std::string>& registers);

/// Post-measurement state for outcome `outcome` on `registers`, renormalized,
/// together with the outcome probability. Returns probability 0 and the
/// unmodified state when the outcome has no weight.
std::pair<SimState, double> condition_on(const SimState& state,
                                         const std::vector<std::string>& registers,
                                         std::uint64_t outcome);

/// Reduced density matrix on the concatenated registers.
CMatrix reduced_density(const SimState& state, const std::vector<std::string>& registers);

/// Output distribution of `field` when running alg on oracle.
OutputDistribution output_distribution(const QueryAlgorithm& alg, const Oracle& oracle,
                                       const AlgorithmInput& input, const std::string& field);

}  // namespace qromlab::quantum_sim
