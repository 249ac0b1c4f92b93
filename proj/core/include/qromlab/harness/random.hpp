#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qromlab/boolean_poly/multilinear_poly.hpp"
#include "qromlab/info_theory/multipartite_state.hpp"
#include "qromlab/linalg.hpp"
#include "qromlab/quantum_sim/distribution.hpp"
#include "qromlab/quantum_sim/oracle.hpp"
#include "qromlab/quantum_sim/query_algorithm.hpp"

// Random instances for the lemma suites and tests.
namespace qromlab::harness {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
CMatrix random_unitary(int dim, Rng& rng);
CVector random_pure_state(int dim, Rng& rng);
/// Normalized G G^dag with G of shape dim x rank.
CMatrix random_density(int dim, int rank, Rng& rng);

/// Distribution over `size` outcomes ("0".."size-1" padded to equal width),
/// each outcome kept with probability `keep` so supports differ.
quantum_sim::OutputDistribution random_distribution(int size, double keep, Rng& rng);

quantum_sim::Oracle random_oracle(int n, Rng& rng);

/// d-query algorithm on registers (q: n, a: 1, w: workspace) with Haar
/// unitaries between queries; output field "out" covers w.
quantum_sim::QueryAlgorithm random_algorithm(int n, int workspace, int d, Rng& rng);

/// Sum of `terms` monomials of degree <= deg on N variables with integer
/// coefficients in [-3, 3]; at least one monomial has degree exactly deg.
boolean_poly::MultilinearPoly random_polynomial(int num_vars, int deg, int terms, Rng& rng);

/// Random mixed state on qubit-sized systems with the given labels and dims.
info_theory::MultipartiteState random_multipartite(const std::vector<info_theory::System>& systems,
                                                    int rank, Rng& rng);

}  // namespace qromlab::harness
