#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qromlab/info_theory/multipartite_state.hpp"
#include "qromlab/info_theory/recovery.hpp"
#include "qromlab/linalg.hpp"
#include "qromlab/numeric_policy.hpp"

namespace qromlab::info_theory {

/// One system raised to a number of identical copies: (B, 3) is B_1 B_2 B_3.
struct Factor {
  std::string label;
  int copies = 1;
};
using Factors = std::vector<Factor>;

/// A separable state sum_k p_k (x)_s |v_k^s><v_k^s| stored through the Gram
/// matrices G^s_kl = <v_k^s|v_l^s>. Reduced states on any set of systems,
/// including many copies of one system, have the spectrum of
/// sqrt(p_k p_l) prod_s (G^s_kl)^copies, so entropies never need the full
/// tensor-product space.
class ProductMixture {
 public:
  explicit ProductMixture(std::vector<double> weights);

  std::size_t terms() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }

  /// Unit vectors, one per term.
  void add_vectors(const std::string& label, const std::vector<CVector>& vectors);
  /// Classical register: G_kl = [value_k == value_l].
  void add_classical(const std::string& label, const std::vector<std::uint64_t>& values);
  void add_gram(const std::string& label, CMatrix gram);

  bool contains(const std::string& label) const { return grams_.count(label) > 0; }
  const CMatrix& gram(const std::string& label) const;
  /// Per-term values of a classical system (empty for quantum systems).
  const std::vector<std::uint64_t>& classical_values(const std::string& label) const;

  /// Elementwise product of the factors' Gram matrices (all ones if empty).
  CMatrix joint_gram(const Factors& factors) const;
  double entropy(const Factors& factors, const NumericPolicy& policy = default_policy()) const;
  /// I(A:B|C) over factor lists.
  double cmi(const Factors& a, const Factors& b, const Factors& c,
             const NumericPolicy& policy = default_policy()) const;

  /// Coordinates of the joint vectors in a basis of their span: column k is
  /// x_k with x_k^dag x_l = joint_gram_kl. Rows = numerical rank.
  CMatrix coordinates(const Factors& factors,
                      const NumericPolicy& policy = default_policy()) const;

  /// Dense state sum_k p_k (x)_g |x_k^g><x_k^g| with one system per group,
  /// each compressed to its span.
  MultipartiteState dense_state(const std::vector<Factors>& groups, const Labels& labels,
                                const NumericPolicy& policy = default_policy()) const;

 private:
  std::vector<double> weights_;
  std::map<std::string, CMatrix> grams_;
  std::map<std::string, std::vector<std::uint64_t>> classical_;
};

/// 1/2 || sum_j c_j |w_j><w_j| ||_1 given the Gram matrix G_jk = <w_j|w_k>.
double signed_ensemble_trace_norm(const std::vector<double>& coefficients, const CMatrix& gram,
                                  double cutoff);

struct MixtureRecovery {
  RecoveryChannel channel;
  /// A' symbol -> value of the classical A system (when `a` is a single
  /// classical factor); otherwise empty and A' indexes the span basis.
  std::vector<std::uint64_t> a_values;
  /// Coordinates (columns) of the E vectors the channel acts on.
  CMatrix e_coordinates;
  RecoveryReport report;
};

/// Builds the recovery channel of `a` from `e` on the compressed (A, E)
/// state and measures TD(sigma_{A'EB}, rho_{AEB}) against `b` without
/// forming the A'EB space explicitly.
MixtureRecovery recover_from_mixture(const ProductMixture& mixture, const Factors& a,
                                     const Factors& e, const Factors& b,
                                     RecoveryKind kind = RecoveryKind::petz,
                                     const NumericPolicy& policy = default_policy(),
                                     const RotationGrid& grid = {});

}  // namespace qromlab::info_theory
