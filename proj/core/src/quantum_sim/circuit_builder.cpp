#include "qromlab/quantum_sim/circuit_builder.hpp"

#include <cmath>
#include <vector>

#include "qromlab/error.hpp"

namespace qromlab::quantum_sim {

CircuitBuilder::CircuitBuilder(RegisterLayout layout)
    : layout_(std::move(layout)),
      matrix_(CMatrix::Identity(static_cast<Eigen::Index>(layout_.dimension()),
                                static_cast<Eigen::Index>(layout_.dimension()))) {}

void CircuitBuilder::single_qubit(std::uint64_t mask, const Eigen::Matrix2cd& gate) {
  const auto dim = static_cast<std::uint64_t>(matrix_.rows());
  for (std::uint64_t r0 = 0; r0 < dim; ++r0) {
    if (r0 & mask) continue;
    const std::uint64_t r1 = r0 | mask;
    const auto i0 = static_cast<Eigen::Index>(r0);
    const auto i1 = static_cast<Eigen::Index>(r1);
    const Eigen::RowVectorXcd a = matrix_.row(i0);
    const Eigen::RowVectorXcd b = matrix_.row(i1);
    matrix_.row(i0) = gate(0, 0) * a + gate(0, 1) * b;
    matrix_.row(i1) = gate(1, 0) * a + gate(1, 1) * b;
  }
}

CircuitBuilder& CircuitBuilder::hadamard(const std::string& reg) {
  const auto& r = layout_.at(reg);
  for (int k = 0; k < r.width; ++k) hadamard(reg, k);
  return *this;
}

CircuitBuilder& CircuitBuilder::hadamard(const std::string& reg, int bit) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  single_qubit(layout_.bit_mask(layout_.at(reg), bit), h);
  return *this;
}

CircuitBuilder& CircuitBuilder::pauli_x(const std::string& reg, int bit) {
  const std::uint64_t mask = layout_.bit_mask(layout_.at(reg), bit);
  return permutation([mask](std::uint64_t x) { return x ^ mask; });
}

CircuitBuilder& CircuitBuilder::xor_into(const std::string& dst, const std::string& src) {
  const auto& d = layout_.at(dst);
  const auto& s = layout_.at(src);
  if (s.width > d.width) {
    throw DimensionMismatch("xor_into: source '" + src + "' is wider than destination '" + dst +
                            "'");
  }
  if (dst == src) throw InvalidArgument("xor_into: source and destination are both '" + dst + "'");
  const RegisterLayout& L = layout_;
  return permutation([&L, &d, &s](std::uint64_t x) {
    return L.write(x, d, L.read(x, d) ^ L.read(x, s));
  });
}

CircuitBuilder& CircuitBuilder::cnot(const std::string& src, int src_bit, const std::string& dst,
                                     int dst_bit) {
  const std::uint64_t c = layout_.bit_mask(layout_.at(src), src_bit);
  const std::uint64_t t = layout_.bit_mask(layout_.at(dst), dst_bit);
  if (c == t) throw InvalidArgument("cnot: control and target are the same qubit");
  return permutation([c, t](std::uint64_t x) { return (x & c) ? x ^ t : x; });
}

CircuitBuilder& CircuitBuilder::controlled_z(const std::string& a, int a_bit,
                                             const std::string& b, int b_bit) {
  const std::uint64_t ma = layout_.bit_mask(layout_.at(a), a_bit);
  const std::uint64_t mb = layout_.bit_mask(layout_.at(b), b_bit);
  for (Eigen::Index r = 0; r < matrix_.rows(); ++r) {
    const auto x = static_cast<std::uint64_t>(r);
    if ((x & ma) && (x & mb)) matrix_.row(r) *= -1.0;
  }
  return *this;
}

CircuitBuilder& CircuitBuilder::permutation(
    const std::function<std::uint64_t(std::uint64_t)>& map) {
  const auto dim = static_cast<std::uint64_t>(matrix_.rows());
  std::vector<char> hit(dim, 0);
  CMatrix out(matrix_.rows(), matrix_.cols());
  for (std::uint64_t x = 0; x < dim; ++x) {
    const std::uint64_t y = map(x);
    if (y >= dim || hit[y]) throw InvalidArgument("permutation: map is not a bijection");
    hit[y] = 1;
    out.row(static_cast<Eigen::Index>(y)) = matrix_.row(static_cast<Eigen::Index>(x));
  }
  matrix_ = std::move(out);
  return *this;
}

CircuitBuilder& CircuitBuilder::apply(const CMatrix& u) {
  if (u.rows() != matrix_.rows() || u.cols() != matrix_.cols()) {
    throw DimensionMismatch("CircuitBuilder::apply: unitary has the wrong dimension");
  }
  matrix_ = u * matrix_;
  return *this;
}

}  // namespace qromlab::quantum_sim
