#include "qromlab/quantum_sim/register_layout.hpp"

#include <set>

#include "qromlab/error.hpp"

namespace qromlab::quantum_sim {

RegisterLayout::RegisterLayout(const std::vector<std::pair<std::string, int>>& registers) {
  std::set<std::string> seen;
  for (const auto& [name, width] : registers) {
    if (name.empty()) throw InvalidArgument("RegisterLayout: empty register name");
    if (!seen.insert(name).second) {
      throw InvalidArgument("RegisterLayout: duplicate register '" + name + "'");
    }
    if (width <= 0) {
      throw InvalidArgument("RegisterLayout: register '" + name + "' has width " +
                            std::to_string(width));
    }
    registers_.push_back({name, total_qubits_, width});
    total_qubits_ += width;
  }
  if (total_qubits_ > kMaxQubits) {
    throw SizeLimitExceeded("RegisterLayout: " + std::to_string(total_qubits_) +
                            " qubits exceeds the dense-simulation limit of " +
                            std::to_string(kMaxQubits));
  }
}

bool RegisterLayout::contains(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return true;
  }
  return false;
}

const Register& RegisterLayout::at(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return r;
  }
  std::string known;
  for (const auto& r : registers_) known += (known.empty() ? "" : ", ") + r.name;
  throw DimensionMismatch("unknown register '" + std::string(name) + "' (layout has: " + known +
                          ")");
}

int RegisterLayout::width(const std::vector<std::string>& names) const {
  int w = 0;
  for (const auto& n : names) w += at(n).width;
  return w;
}

std::uint64_t RegisterLayout::read(std::uint64_t basis, const Register& reg) const {
  const int shift = total_qubits_ - reg.offset - reg.width;
  return (basis >> shift) & ((std::uint64_t{1} << reg.width) - 1);
}

std::uint64_t RegisterLayout::write(std::uint64_t basis, const Register& reg,
                                    std::uint64_t value) const {
  const int shift = total_qubits_ - reg.offset - reg.width;
  const std::uint64_t mask = ((std::uint64_t{1} << reg.width) - 1) << shift;
  return (basis & ~mask) | ((value << shift) & mask);
}

std::uint64_t RegisterLayout::read(std::uint64_t basis,
                                   const std::vector<std::string>& names) const {
  std::uint64_t value = 0;
  for (const auto& n : names) {
    const auto& r = at(n);
    value = (value << r.width) | read(basis, r);
  }
  return value;
}

std::uint64_t RegisterLayout::write(std::uint64_t basis, const std::vector<std::string>& names,
                                    std::uint64_t value) const {
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    const auto& r = at(*it);
    basis = write(basis, r, value & ((std::uint64_t{1} << r.width) - 1));
    value >>= r.width;
  }
  return basis;
}

std::uint64_t RegisterLayout::bit_mask(const Register& reg, int bit) const {
  if (bit < 0 || bit >= reg.width) {
    throw DimensionMismatch("bit " + std::to_string(bit) + " out of range for register '" +
                            reg.name + "' of width " + std::to_string(reg.width));
  }
  return std::uint64_t{1} << (total_qubits_ - reg.offset - reg.width + bit);
}

RegisterLayout RegisterLayout::appended(const std::string& name, int width) const {
  std::vector<std::pair<std::string, int>> regs;
  for (const auto& r : registers_) regs.emplace_back(r.name, r.width);
  regs.emplace_back(name, width);
  return RegisterLayout(regs);
}

bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
  if (a.registers_.size() != b.registers_.size()) return false;
  for (std::size_t i = 0; i < a.registers_.size(); ++i) {
    if (a.registers_[i].name != b.registers_[i].name ||
        a.registers_[i].width != b.registers_[i].width) {
      return false;
    }
  }
  return true;
}

std::string to_bitstring(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int k = 0; k < width; ++k) {
    if ((value >> k) & 1U) s[static_cast<std::size_t>(width - 1 - k)] = '1';
  }
  return s;
}

std::uint64_t from_bitstring(std::string_view bits) {
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("bit string may only contain 0 and 1");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return v;
}

}  // namespace qromlab::quantum_sim
