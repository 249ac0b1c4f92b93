#include "qromlab/quantum_sim/query_algorithm.hpp"

#include "qromlab/error.hpp"

namespace qromlab::quantum_sim {

QueryAlgorithm::QueryAlgorithm(std::string name, RegisterLayout layout, InputSpec spec,
                               std::vector<CMatrix> unitaries, const NumericPolicy& policy)
    : name_(std::move(name)),
      layout_(std::move(layout)),
      spec_(std::move(spec)),
      unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) {
    throw InvalidArgument("QueryAlgorithm '" + name_ + "': needs at least one unitary");
  }
  const auto dim = static_cast<Eigen::Index>(layout_.dimension());
  for (std::size_t k = 0; k < unitaries_.size(); ++k) {
    const auto& u = unitaries_[k];
    if (u.rows() != dim || u.cols() != dim) {
      throw DimensionMismatch("QueryAlgorithm '" + name_ + "': unitary " + std::to_string(k + 1) +
                              " is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                              ", layout dimension is " + std::to_string(dim));
    }
    const double defect = unitarity_defect(u);
    if (defect > policy.unitarity_tol) {
      throw InvalidArgument("QueryAlgorithm '" + name_ + "': unitary " + std::to_string(k + 1) +
                            " has unitarity defect " + std::to_string(defect));
    }
    sparse_.push_back(u.sparseView(0.0, 0.0));
    sparse_.back().makeCompressed();
  }
  for (const auto& r : spec_.classical_inputs) layout_.at(r);
  for (const auto& r : spec_.quantum_inputs) layout_.at(r);
  for (const auto& [field, regs] : spec_.outputs) {
    for (const auto& r : regs) layout_.at(r);
  }
  if (d() > 0 && !has_query_wires()) {
    throw InvalidArgument("QueryAlgorithm '" + name_ + "': d > 0 but no query wires named");
  }
  if (has_query_wires()) {
    layout_.at(spec_.query_input);
    if (layout_.at(spec_.query_output).width != 1) {
      throw DimensionMismatch("QueryAlgorithm '" + name_ + "': query output register '" +
                              spec_.query_output + "' must have width 1");
    }
  }
}

int QueryAlgorithm::n_in() const {
  return has_query_wires() ? layout_.at(spec_.query_input).width : 0;
}

int QueryAlgorithm::workspace_qubits() const {
  return layout_.total_qubits() - n_in() - (has_query_wires() ? 1 : 0);
}

const std::vector<std::string>& QueryAlgorithm::output(const std::string& field) const {
  auto it = spec_.outputs.find(field);
  if (it == spec_.outputs.end()) {
    throw InvalidArgument("QueryAlgorithm '" + name_ + "': no output field '" + field + "'");
  }
  return it->second;
}

nlohmann::json to_json(const QueryAlgorithm& alg) {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : alg.layout().registers()) regs.push_back({{"name", r.name}, {"width", r.width}});
  nlohmann::json us = nlohmann::json::array();
  for (const auto& u : alg.unitaries()) us.push_back(matrix_to_json(u));
  const auto& s = alg.spec();
  return {{"name", alg.name()},
          {"n_in", alg.n_in()},
          {"workspace_qubits", alg.workspace_qubits()},
          {"d", alg.d()},
          {"unitaries", us},
          {"input_spec",
           {{"registers", regs},
            {"query_input", s.query_input},
            {"query_output", s.query_output},
            {"classical_inputs", s.classical_inputs},
            {"quantum_inputs", s.quantum_inputs},
            {"outputs", s.outputs}}}};
}

QueryAlgorithm algorithm_from_json(const nlohmann::json& j, const NumericPolicy& policy) {
  const auto& js = j.at("input_spec");
  std::vector<std::pair<std::string, int>> regs;
  for (const auto& r : js.at("registers")) {
    regs.emplace_back(r.at("name").get<std::string>(), r.at("width").get<int>());
  }
  InputSpec spec;
  spec.query_input = js.value("query_input", "");
  spec.query_output = js.value("query_output", "");
  spec.classical_inputs = js.value("classical_inputs", std::vector<std::string>{});
  spec.quantum_inputs = js.value("quantum_inputs", std::vector<std::string>{});
  spec.outputs = js.value("outputs", std::map<std::string, std::vector<std::string>>{});
  std::vector<CMatrix> us;
  for (const auto& u : j.at("unitaries")) us.push_back(matrix_from_json(u));
  QueryAlgorithm alg(j.value("name", "algorithm"), RegisterLayout(regs), spec, std::move(us),
                     policy);
  if (j.contains("d") && j.at("d").get<int>() != alg.d()) {
    throw DimensionMismatch("algorithm JSON: d=" + std::to_string(j.at("d").get<int>()) +
                            " but " + std::to_string(alg.unitaries().size()) + " unitaries");
  }
  if (j.contains("n_in") && j.at("n_in").get<int>() != alg.n_in()) {
    throw DimensionMismatch("algorithm JSON: n_in does not match the query input register");
  }
  return alg;
}

}  // namespace qromlab::quantum_sim
