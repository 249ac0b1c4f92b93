#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qromlab/boolean_poly/multilinear_poly.hpp"
#include "qromlab/boolean_poly/partial_assignment.hpp"

namespace qromlab::boolean_poly {

/// Pairwise-disjoint maximum-degree monomials, scanned in ascending bitmask
/// order; every maximum monomial meets at least one of them.
std::vector<std::uint64_t> maximal_disjoint_maximum_monomials(const MultilinearPoly& f);

/// First assignment on `monomial` (variables ascending, +1 before -1, first
/// variable most significant) with f(x^mu) != 0. `h` is a truth-table index.
PartialAssignment alon_fixing(const MultilinearPoly& f, std::uint64_t monomial, std::uint64_t h);

enum class ReprogramCase { A, B };
std::string to_string(ReprogramCase c);

struct ReprogramOutcome {
  PartialAssignment mu;
  ReprogramCase case_tag = ReprogramCase::A;
  int rounds_used = 0;
  /// Size of the disjoint set in the last round examined (0 if case A was
  /// reached with no round).
  int disjoint_set_size_at_stop = 0;
  /// f restricted by mu at stop.
  MultilinearPoly restricted;
  /// Case B: the > m disjoint maximum monomials of `restricted`.
  std::vector<std::uint64_t> disjoint_monomials;
  int input_degree = 0;
};

ReprogramOutcome reprogram(const MultilinearPoly& f, int m);

/// Case B: the m fixers mu_l for point h, one per disjoint monomial, from
/// Alon fixing on the restricted polynomial.
std::vector<PartialAssignment> case_b_fixers(const ReprogramOutcome& outcome, int m,
                                             std::uint64_t h);

/// Exhaustive check over all 2^N points (N <= 16), independent of the
/// algorithm's internal choices:
///   case A: f(x^mu) != 0 for every x;
///   case B: for every x there are m pairwise-disjoint assignments mu_l,
///           |mu_l| <= deg f, off SUPP(mu), with f(x^{mu_l . mu}) != 0;
/// and |mu| <= m deg(f)^2 in both cases.
bool verify_reprogram_outcome(const MultilinearPoly& f, const ReprogramOutcome& outcome, int m);

}  // namespace qromlab::boolean_poly
