#pragma once

#include <cstdint>
#include <map>

#include "qromlab/quantum_sim/oracle.hpp"
#include "qromlab/quantum_sim/query_algorithm.hpp"
#include "qromlab/quantum_sim/simulator.hpp"

namespace qromlab::attack {

/// The only route by which a sampled-mode Eve touches H. It never hands out
/// the truth table and counts every oracle call, classical or superposed.
class OracleAccess {
 public:
  explicit OracleAccess(const quantum_sim::Oracle& oracle) : oracle_(oracle) {}
  OracleAccess(const OracleAccess&) = delete;
  OracleAccess& operator=(const OracleAccess&) = delete;

  int n() const { return oracle_.n(); }
  std::size_t size() const { return oracle_.size(); }

  int classical_query(std::uint64_t i);

  /// Runs alg on H with `overrides` (i -> bit) reprogrammed; charges d.
  quantum_sim::SimState run(const quantum_sim::QueryAlgorithm& alg,
                            const quantum_sim::AlgorithmInput& input,
                            const std::map<std::uint64_t, int>& overrides = {});

  /// State right before the t-th call; charges t - 1.
  quantum_sim::SimState run_until_query(const quantum_sim::QueryAlgorithm& alg,
                                        const quantum_sim::AlgorithmInput& input, int t);

  /// `copies` independent runs of a deterministic preparation: the state is
  /// simulated once and copies * d calls are charged.
  quantum_sim::SimState run_copies(const quantum_sim::QueryAlgorithm& alg,
                                   const quantum_sim::AlgorithmInput& input, int copies);

  std::uint64_t queries() const { return queries_; }

 private:
  const quantum_sim::Oracle& oracle_;
  std::uint64_t queries_ = 0;
};

}  // namespace qromlab::attack
