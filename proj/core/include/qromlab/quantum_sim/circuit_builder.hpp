#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "qromlab/linalg.hpp"
#include "qromlab/quantum_sim/register_layout.hpp"

namespace qromlab::quantum_sim {

/// Composes gates on a register layout into one dense unitary. Gates are
/// applied in call order (the first call acts first on the state).
class CircuitBuilder {
 public:
  explicit CircuitBuilder(RegisterLayout layout);

  CircuitBuilder& hadamard(const std::string& reg);
  CircuitBuilder& hadamard(const std::string& reg, int bit);
  CircuitBuilder& pauli_x(const std::string& reg, int bit);
  /// dst ^= src, bitwise (src must not be wider than dst).
  CircuitBuilder& xor_into(const std::string& dst, const std::string& src);
  /// dst[dst_bit] ^= src[src_bit]
  CircuitBuilder& cnot(const std::string& src, int src_bit, const std::string& dst, int dst_bit);
  /// Phase (-1) when both bits are 1.
  CircuitBuilder& controlled_z(const std::string& a, int a_bit, const std::string& b, int b_bit);
  /// Basis permutation; `map` must be a bijection on [0, dim).
  CircuitBuilder& permutation(const std::function<std::uint64_t(std::uint64_t)>& map);
  /// Arbitrary full-register unitary.
  CircuitBuilder& apply(const CMatrix& u);

  const RegisterLayout& layout() const { return layout_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  void single_qubit(std::uint64_t mask, const Eigen::Matrix2cd& gate);

  RegisterLayout layout_;
  CMatrix matrix_;
};

}  // namespace qromlab::quantum_sim
