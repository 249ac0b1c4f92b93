#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qromlab::quantum_sim {

/// A named, contiguous block of qubits. Offsets count from the most
/// significant qubit, so |i, b> for registers (i, b) is basis index i*2 + b.
/// Bit k of a register holds 2^k of its value.
struct Register {
  std::string name;
  int offset = 0;
  int width = 0;
};

class RegisterLayout {
 public:
  static constexpr int kMaxQubits = 14;

  RegisterLayout() = default;
  explicit RegisterLayout(const std::vector<std::pair<std::string, int>>& registers);

  int total_qubits() const { return total_qubits_; }
  std::size_t dimension() const { return std::size_t{1} << total_qubits_; }

  const std::vector<Register>& registers() const { return registers_; }
  bool contains(std::string_view name) const;
  const Register& at(std::string_view name) const;
  /// Sum of widths of the named registers.
  int width(const std::vector<std::string>& names) const;

  std::uint64_t read(std::uint64_t basis, const Register& reg) const;
  std::uint64_t write(std::uint64_t basis, const Register& reg, std::uint64_t value) const;
  /// Concatenation of several registers, first register most significant.
  std::uint64_t read(std::uint64_t basis, const std::vector<std::string>& names) const;
  std::uint64_t write(std::uint64_t basis, const std::vector<std::string>& names,
                      std::uint64_t value) const;
  /// Basis-index bit mask for bit `bit` of a register.
  std::uint64_t bit_mask(const Register& reg, int bit) const;

  RegisterLayout appended(const std::string& name, int width) const;

  friend bool operator==(const RegisterLayout& a, const RegisterLayout& b);

 private:
  std::vector<Register> registers_;
  int total_qubits_ = 0;
};

/// Formats `value` as a `width`-bit string, most significant bit first.
std::string to_bitstring(std::uint64_t value, int width);
std::uint64_t from_bitstring(std::string_view bits);

}  // namespace qromlab::quantum_sim
