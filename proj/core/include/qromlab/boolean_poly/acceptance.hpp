#pragma once

#include <functional>
#include <map>
#include <string>

#include "qromlab/boolean_poly/multilinear_poly.hpp"
#include "qromlab/boolean_poly/partial_assignment.hpp"
#include "qromlab/numeric_policy.hpp"
#include "qromlab/quantum_sim/oracle.hpp"
#include "qromlab/quantum_sim/query_algorithm.hpp"
#include "qromlab/quantum_sim/simulator.hpp"

namespace qromlab::boolean_poly {

/// Output fields and the bit strings they must equal.
using TargetOutcome = std::map<std::string, std::string>;

/// Polynomial of x -> p(H_{x^eta}) where H_x is the oracle with signed view
/// x. The restriction is substituted while sweeping the truth tables.
MultilinearPoly polynomial_of_oracle_function(int n, const std::function<double(const quantum_sim::Oracle&)>& p,
                                              const PartialAssignment& restriction = {},
                                              const NumericPolicy& policy = default_policy(),
                                              unsigned jobs = 1);

/// Pr[alg^H(input) yields `target`] as a polynomial in x; throws
/// InvariantViolation if its degree exceeds 2d. `oracle_n` is the oracle's
/// input width; -1 takes it from alg, which has none when alg makes no queries.
MultilinearPoly extract_acceptance_poly(const quantum_sim::QueryAlgorithm& alg,
                                        const TargetOutcome& target,
                                        const quantum_sim::AlgorithmInput& input,
                                        const PartialAssignment& restriction = {},
                                        const NumericPolicy& policy = default_policy(),
                                        unsigned jobs = 1, int oracle_n = -1);

/// Probability of `target` in the final state of alg.
double outcome_probability(const quantum_sim::QueryAlgorithm& alg,
                           const quantum_sim::SimState& final_state, const TargetOutcome& target);

}  // namespace qromlab::boolean_poly
