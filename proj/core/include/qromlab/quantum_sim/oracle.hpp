#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace qromlab::quantum_sim {

/// Truth table of H : [2^n] -> {0,1}. Entry i is H(i); the signed view is
/// x_i = (-1)^{H(i)}.
class Oracle {
 public:
  static constexpr int kMaxInputQubits = 20;

  Oracle(int n, std::vector<std::uint8_t> table);

  static Oracle zero(int n);
  /// Bit i of `bits` is H(i). Requires 2^n <= 64.
  static Oracle from_bits(int n, std::uint64_t bits);
  static Oracle from_signed(const std::vector<int>& x);
  static Oracle from_bitstring(const std::string& table);

  int n() const { return n_; }
  std::size_t size() const { return table_.size(); }
  int operator()(std::uint64_t i) const { return table_.at(i); }

  std::vector<int> signed_view() const;
  std::uint64_t to_bits() const;
  /// "H(0)H(1)...H(N-1)".
  std::string to_bitstring() const;

  /// Copy with H(i) := value for every (i, value) in `overrides`.
  Oracle overwritten(const std::map<std::uint64_t, int>& overrides) const;
  /// Indices where the two oracles differ.
  std::vector<std::uint64_t> diff(const Oracle& other) const;

  friend bool operator==(const Oracle&, const Oracle&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> table_;
};

/// Every oracle on n input qubits, ordered by Oracle::to_bits().
std::vector<Oracle> all_oracles(int n);

nlohmann::json to_json(const Oracle& oracle);
Oracle oracle_from_json(const nlohmann::json& j);

}  // namespace qromlab::quantum_sim
