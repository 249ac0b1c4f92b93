#include "qromlab/attack/oracle_access.hpp"

#include "qromlab/error.hpp"

namespace qromlab::attack {

int OracleAccess::classical_query(std::uint64_t i) {
  if (i >= oracle_.size()) throw InvalidArgument("OracleAccess: query index out of range");
  ++queries_;
  return oracle_(i);
}

quantum_sim::SimState OracleAccess::run(const quantum_sim::QueryAlgorithm& alg,
                                        const quantum_sim::AlgorithmInput& input,
                                        const std::map<std::uint64_t, int>& overrides) {
  queries_ += static_cast<std::uint64_t>(alg.d());
  if (overrides.empty()) return quantum_sim::run(alg, oracle_, input);
  return quantum_sim::run(alg, oracle_.overwritten(overrides), input);
}

quantum_sim::SimState OracleAccess::run_until_query(const quantum_sim::QueryAlgorithm& alg,
                                                    const quantum_sim::AlgorithmInput& input,
                                                    int t) {
  queries_ += static_cast<std::uint64_t>(t - 1);
  return quantum_sim::run_until_query(alg, oracle_, input, t);
}

quantum_sim::SimState OracleAccess::run_copies(const quantum_sim::QueryAlgorithm& alg,
                                               const quantum_sim::AlgorithmInput& input,
                                               int copies) {
  if (copies < 1) throw InvalidArgument("OracleAccess::run_copies: needs at least one copy");
  queries_ += static_cast<std::uint64_t>(copies) * static_cast<std::uint64_t>(alg.d());
  return quantum_sim::run(alg, oracle_, input);
}

}  // namespace qromlab::attack
