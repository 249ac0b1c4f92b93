#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qromlab/linalg.hpp"
#include "qromlab/numeric_policy.hpp"
#include "qromlab/quantum_sim/register_layout.hpp"

namespace qromlab::quantum_sim {

/// Which wires play which role. Oracle wires are referenced by name.
struct InputSpec {
  /// Registers loaded from the classical input, in the order the input bit
  /// string lists them.
  std::vector<std::string> classical_inputs;
  /// Registers that may instead receive a caller-supplied quantum state.
  std::vector<std::string> quantum_inputs;
  std::string query_input;
  std::string query_output;
  /// Named output fields; each is the concatenation of its registers.
  std::map<std::string, std::vector<std::string>> outputs;

  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

/// U_1, U_H, U_2, ..., U_d, U_H, U_{d+1} over a fixed register layout. Every
/// register not named as an input starts in |0>.
class QueryAlgorithm {
 public:
  QueryAlgorithm(std::string name, RegisterLayout layout, InputSpec spec,
                 std::vector<CMatrix> unitaries, const NumericPolicy& policy = default_policy());

  const std::string& name() const { return name_; }
  const RegisterLayout& layout() const { return layout_; }
  const InputSpec& spec() const { return spec_; }
  const std::vector<CMatrix>& unitaries() const { return unitaries_; }
  /// Same unitaries with exact zeros pruned; circuit-built gates are mostly
  /// permutations, so simulation runs on these.
  const std::vector<CSparse>& sparse_unitaries() const { return sparse_; }

  int d() const { return static_cast<int>(unitaries_.size()) - 1; }
  bool has_query_wires() const { return !spec_.query_input.empty(); }
  int n_in() const;
  int workspace_qubits() const;
  const std::vector<std::string>& output(const std::string& field) const;

 private:
  std::string name_;
  RegisterLayout layout_;
  InputSpec spec_;
  std::vector<CMatrix> unitaries_;
  std::vector<CSparse> sparse_;
};

nlohmann::json to_json(const QueryAlgorithm& alg);
QueryAlgorithm algorithm_from_json(const nlohmann::json& j,
                                   const NumericPolicy& policy = default_policy());

}  // namespace qromlab::quantum_sim
