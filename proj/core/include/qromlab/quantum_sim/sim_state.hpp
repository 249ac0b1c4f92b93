#pragma once

#include <variant>

#include "qromlab/linalg.hpp"
#include "qromlab/numeric_policy.hpp"
#include "qromlab/quantum_sim/register_layout.hpp"

namespace qromlab::quantum_sim {

/// A pure state vector or density matrix over a register layout.
class SimState {
 public:
  static SimState pure(RegisterLayout layout, CVector amplitudes);
  static SimState mixed(RegisterLayout layout, CMatrix density);

  bool is_pure() const { return std::holds_alternative<CVector>(data_); }
  const RegisterLayout& layout() const { return layout_; }
  std::size_t dimension() const { return layout_.dimension(); }

  /// Throws unless is_pure().
  const CVector& amplitudes() const;
  /// |psi><psi| for pure states.
  CMatrix density() const;

  /// Unit norm / Hermitian, PSD, unit trace within the policy tolerances.
  void validate(const NumericPolicy& policy = default_policy()) const;

  SimState apply(const CMatrix& unitary) const;
  SimState apply(const CSparse& unitary) const;

 private:
  SimState(RegisterLayout layout, std::variant<CVector, CMatrix> data);

  RegisterLayout layout_;
  std::variant<CVector, CMatrix> data_;
};

}  // namespace qromlab::quantum_sim
