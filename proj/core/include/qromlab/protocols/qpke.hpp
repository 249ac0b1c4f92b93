#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qromlab/numeric_policy.hpp"
#include "qromlab/quantum_sim/oracle.hpp"
#include "qromlab/quantum_sim/query_algorithm.hpp"
#include "qromlab/quantum_sim/simulator.hpp"

namespace qromlab::protocols {

using quantum_sim::Oracle;
using quantum_sim::QueryAlgorithm;

enum class KeyFlavor { classical_pk, quantum_pk };
std::string to_string(KeyFlavor f);

/// Field conventions shared by every scheme:
///   gen    outputs "sk" and (classical flavor) "pk"; no inputs
///   pkgen  quantum flavor only: classical input sk, output "pk", no queries
///   enc    classical inputs: pk registers (classical flavor) then the
///          message register; quantum flavor takes pk as quantum input;
///          output "ct"
///   dec    classical inputs: sk registers then (classical flavor) the ct
///          registers; quantum flavor takes ct as quantum input; output "m"
struct QPKEScheme {
  std::string name;
  int n = 0;
  int d = 0;
  KeyFlavor flavor = KeyFlavor::classical_pk;
  QueryAlgorithm gen;
  std::optional<QueryAlgorithm> pkgen;
  QueryAlgorithm enc;
  QueryAlgorithm dec;
  std::string message_register;
  std::vector<int> message_space = {0, 1};
  std::string oracle_family = "all";

  /// Checks query counts, field conventions and widths.
  void validate() const;
  int sk_width() const;
  int pk_width() const;
  int ct_width() const;
};

nlohmann::json manifest_entry(const QPKEScheme& scheme);
nlohmann::json to_json(const QPKEScheme& scheme);
QPKEScheme scheme_from_json(const nlohmann::json& j);

/// Joint outcome distribution of several output fields, keyed by the
/// per-field bit strings.
using JointDistribution = std::map<std::vector<std::string>, double>;
JointDistribution field_distribution(const QueryAlgorithm& alg,
                                     const quantum_sim::SimState& state,
                                     const std::vector<std::string>& fields);

/// Classical input for an algorithm from concatenated field values.
quantum_sim::AlgorithmInput classical_input(const QueryAlgorithm& alg, const std::string& bits);

/// Pure or mixed pk state produced by pkgen on sk (quantum flavor).
quantum_sim::QuantumInput quantum_public_key(const QPKEScheme& scheme, const Oracle& oracle,
                                             const std::string& sk,
                                             const NumericPolicy& policy = default_policy());

struct CompletenessWitness {
  Oracle oracle = Oracle::zero(0);
  std::string sk;
  std::string pk;
  int message = 0;
  std::string ct;
  double success = 0.0;
};

struct CompletenessReport {
  bool perfect = true;
  double worst_success = 1.0;
  std::size_t oracles_checked = 0;
  std::optional<CompletenessWitness> witness;
};

/// Exhaustive check that Dec recovers every plaintext with probability 1
/// (within 1e-9) for every listed oracle and every (sk, pk) in Gen's support.
CompletenessReport check_perfect_completeness(const QPKEScheme& scheme,
                                              const std::vector<Oracle>& oracles,
                                              const NumericPolicy& policy = default_policy(),
                                              unsigned jobs = 1);
/// Over the scheme's declared oracle family.
CompletenessReport check_perfect_completeness(const QPKEScheme& scheme,
                                              const NumericPolicy& policy = default_policy(),
                                              unsigned jobs = 1);

/// Oracles of the scheme's declared family ("all": every oracle on n qubits).
std::vector<Oracle> oracle_family(const QPKEScheme& scheme);

}  // namespace qromlab::protocols
