#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qromlab/info_theory/multipartite_state.hpp"
#include "qromlab/linalg.hpp"
#include "qromlab/numeric_policy.hpp"

namespace qromlab::info_theory {

enum class RecoveryKind { petz, rotated_petz_average };

std::string to_string(RecoveryKind kind);
RecoveryKind recovery_kind_from_string(const std::string& s);

struct RotationGrid {
  int points = 9;
  double extent = 2.0;  // grid covers [-extent, extent]
};

/// Channel E -> A' (x) E reconstructing A from E. A' has dim(A) + 1 levels;
/// the last one is the abort symbol that collects input mass outside the
/// support of rho_E.
class RecoveryChannel {
 public:
  RecoveryChannel(RecoveryKind kind, double cutoff, int dim_a, int dim_e,
                  std::vector<CMatrix> kraus);

  RecoveryKind kind() const { return kind_; }
  double cutoff() const { return cutoff_; }
  int dim_a() const { return dim_a_; }
  int dim_a_out() const { return dim_a_ + 1; }
  int abort_symbol() const { return dim_a_; }
  int dim_e() const { return dim_e_; }
  /// Each Kraus operator maps C^{dim_e} -> C^{dim_a_out} (x) C^{dim_e}.
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  /// T(X) for an operator X on E.
  CMatrix apply(const CMatrix& x) const;
  /// T(|v><v|) as Kraus images K_i |v>.
  std::vector<CVector> apply_to_vector(const CVector& v) const;
  /// Distribution of the A' symbol for input |v><v|.
  std::vector<double> a_distribution(const CVector& v) const;

  /// Choi matrix sum_ij |i><j| (x) T(|i><j|), input factor first.
  CMatrix choi() const;
  /// max |sum_i K_i^dag K_i - I|.
  double trace_preservation_defect() const;
  /// Smallest Choi eigenvalue.
  double min_choi_eigenvalue() const;

 private:
  RecoveryKind kind_;
  double cutoff_;
  int dim_a_;
  int dim_e_;
  std::vector<CMatrix> kraus_;
};

/// Petz-type recovery from the reduced state on (a, e). All A labels are
/// merged into one A' system; E is the concatenation of e.
RecoveryChannel build_recovery_channel(const MultipartiteState& state, const Labels& a,
                                       const Labels& e, RecoveryKind kind = RecoveryKind::petz,
                                       const NumericPolicy& policy = default_policy(),
                                       const RotationGrid& grid = {});

/// Same, from an explicit rho_AE with A the most significant factor.
RecoveryChannel build_recovery_channel(const CMatrix& rho_ae, int dim_a, int dim_e,
                                       RecoveryKind kind = RecoveryKind::petz,
                                       const NumericPolicy& policy = default_policy(),
                                       const RotationGrid& grid = {});

/// Applies ch to the E systems `e` of state. Output systems are
/// [a_out_label, state systems in their original order].
MultipartiteState apply_channel(const RecoveryChannel& ch, const MultipartiteState& state,
                                const Labels& e, const std::string& a_out_label = "A'");

struct RecoveryReport {
  double trace_distance = 0.0;  // TD(sigma_{A'EB}, rho_{AEB}) with A padded to A'
  double cmi = 0.0;             // I(A : B | E), bits
  double fr_bound = 0.0;        // sqrt(ln 2 * max(cmi, 0))
  double slack = 0.0;           // fr_bound - trace_distance
  double abort_probability = 0.0;
};

/// Reconstructs A from E and compares against the original state, where B
/// is every system outside a and e.
RecoveryReport evaluate_recovery(const MultipartiteState& state, const Labels& a, const Labels& e,
                                 RecoveryKind kind = RecoveryKind::petz,
                                 const NumericPolicy& policy = default_policy(),
                                 const RotationGrid& grid = {});

/// sqrt(ln 2 * I) with I in bits.
double fawzi_renner_bound(double cmi_bits);

nlohmann::json to_json(const RecoveryChannel& ch);

}  // namespace qromlab::info_theory
