#include "qromlab/quantum_sim/sim_state.hpp"

#include <cmath>

#include "qromlab/error.hpp"

namespace qromlab::quantum_sim {

SimState::SimState(RegisterLayout layout, std::variant<CVector, CMatrix> data)
    : layout_(std::move(layout)), data_(std::move(data)) {}

SimState SimState::pure(RegisterLayout layout, CVector amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != layout.dimension()) {
    throw DimensionMismatch("SimState: vector length " + std::to_string(amplitudes.size()) +
                            " != layout dimension " + std::to_string(layout.dimension()));
  }
  return SimState(std::move(layout), std::move(amplitudes));
}

SimState SimState::mixed(RegisterLayout layout, CMatrix density) {
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  if (density.rows() != dim || density.cols() != dim) {
    throw DimensionMismatch("SimState: density matrix shape does not match layout dimension " +
                            std::to_string(dim));
  }
  return SimState(std::move(layout), std::move(density));
}

const CVector& SimState::amplitudes() const {
  if (!is_pure()) throw InvalidArgument("SimState::amplitudes called on a mixed state");
  return std::get<CVector>(data_);
}

CMatrix SimState::density() const {
  if (is_pure()) {
    const auto& v = std::get<CVector>(data_);
    return v * v.adjoint();
  }
  return std::get<CMatrix>(data_);
}

void SimState::validate(const NumericPolicy& policy) const {
  if (is_pure()) {
    const double norm = std::get<CVector>(data_).norm();
    if (std::abs(norm - 1.0) > policy.norm_tol) {
      throw InvariantViolation("SimState: norm " + std::to_string(norm) + " is not 1");
    }
    return;
  }
  const auto& rho = std::get<CMatrix>(data_);
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > policy.norm_tol) {
    throw InvariantViolation("SimState: density matrix is not Hermitian");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > policy.norm_tol) {
    throw InvariantViolation("SimState: trace " + std::to_string(tr) + " is not 1");
  }
  const RVector ev = hermitian_eigenvalues(rho);
  if (ev.size() > 0 && ev.minCoeff() < -policy.psd_tol) {
    throw InvariantViolation("SimState: eigenvalue " + std::to_string(ev.minCoeff()) +
                             " below -psd_tol");
  }
}

SimState SimState::apply(const CMatrix& unitary) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  if (unitary.rows() != dim || unitary.cols() != dim) {
    throw DimensionMismatch("SimState::apply: unitary dimension does not match the state");
  }
  if (is_pure()) return SimState(layout_, CVector(unitary * std::get<CVector>(data_)));
  return SimState(layout_, CMatrix(unitary * std::get<CMatrix>(data_) * unitary.adjoint()));
}

SimState SimState::apply(const CSparse& unitary) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  if (unitary.rows() != dim || unitary.cols() != dim) {
    throw DimensionMismatch("SimState::apply: unitary dimension does not match the state");
  }
  if (is_pure()) return SimState(layout_, CVector(unitary * std::get<CVector>(data_)));
  const CMatrix left = unitary * std::get<CMatrix>(data_);
  return SimState(layout_, CMatrix((unitary * left.adjoint()).adjoint()));
}

}  // namespace qromlab::quantum_sim
