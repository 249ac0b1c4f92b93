#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <vector>

#include "qromlab/boolean_poly/partial_assignment.hpp"
#include "qromlab/numeric_policy.hpp"

namespace qromlab::boolean_poly {

/// f(x) = sum_S a_S prod_{i in S} x_i over {-1,1}^N, with monomials S as
/// bitmasks. Coefficients with |a_S| <= zero_threshold are never stored.
class MultilinearPoly {
 public:
  static constexpr int kMaxDenseVariables = 20;
  static constexpr int kMaxVariables = 64;

  MultilinearPoly() = default;
  MultilinearPoly(int num_vars, std::map<std::uint64_t, double> coeffs,
                  double zero_threshold = 0.0);

  /// Fourier coefficients of the values f(h), h = truth-table index, via the
  /// fast Walsh-Hadamard transform. The zero threshold is coeff_zero_rel
  /// times the largest |a_S| (or exactly 0 when `exact` is set, for
  /// hand-built polynomials whose coefficients are exact in binary).
  static MultilinearPoly from_values(int num_vars, const std::vector<double>& values,
                                     const NumericPolicy& policy = default_policy(),
                                     bool exact = false);
  static MultilinearPoly from_function(int num_vars, const std::function<double(std::uint64_t)>& f,
                                       const NumericPolicy& policy = default_policy(),
                                       bool exact = false);

  int num_vars() const { return n_; }
  const std::map<std::uint64_t, double>& coeffs() const { return coeffs_; }
  double zero_threshold() const { return threshold_; }
  double coefficient(std::uint64_t mask) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Largest |S| with a stored coefficient; -1 for the zero polynomial.
  int degree() const;

  double evaluate(std::uint64_t h) const;
  double evaluate(const std::vector<int>& x) const;
  /// Values at every h in [0, 2^N) by the inverse transform.
  std::vector<double> evaluate_all() const;
  /// |f(h)| > zero_threshold.
  bool nonzero_at(std::uint64_t h) const;

 private:
  int n_ = 0;
  std::map<std::uint64_t, double> coeffs_;
  double threshold_ = 0.0;
};

/// x -> f(x^eta); the zero threshold carries over from f.
MultilinearPoly restrict(const MultilinearPoly& f, const PartialAssignment& eta);

/// In-place Walsh-Hadamard transform (unnormalized).
void walsh_hadamard(std::vector<double>& v);

nlohmann::json to_json(const MultilinearPoly& f);
MultilinearPoly poly_from_json(const nlohmann::json& j);

}  // namespace qromlab::boolean_poly
