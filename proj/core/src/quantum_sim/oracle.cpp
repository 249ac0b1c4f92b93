#include "qromlab/quantum_sim/oracle.hpp"

#include "qromlab/error.hpp"

namespace qromlab::quantum_sim {

Oracle::Oracle(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
  if (n < 0 || n > kMaxInputQubits) {
    throw InvalidArgument("Oracle: n=" + std::to_string(n) + " outside [0, " +
                          std::to_string(kMaxInputQubits) + "]");
  }
  if (table_.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch("Oracle: table length " + std::to_string(table_.size()) +
                            " != 2^n = " + std::to_string(std::size_t{1} << n));
  }
  for (auto& bit : table_) {
    if (bit > 1) throw InvalidArgument("Oracle: table entries must be 0 or 1");
  }
}

Oracle Oracle::zero(int n) {
  return Oracle(n, std::vector<std::uint8_t>(std::size_t{1} << n, 0));
}

Oracle Oracle::from_bits(int n, std::uint64_t bits) {
  if ((std::size_t{1} << n) > 64) throw InvalidArgument("Oracle::from_bits needs 2^n <= 64");
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = (bits >> i) & 1U;
  return Oracle(n, std::move(table));
}

Oracle Oracle::from_signed(const std::vector<int>& x) {
  int n = 0;
  while ((std::size_t{1} << n) < x.size()) ++n;
  std::vector<std::uint8_t> table(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 1 && x[i] != -1) throw InvalidArgument("Oracle::from_signed: entries must be +-1");
    table[i] = x[i] == -1 ? 1 : 0;
  }
  return Oracle(n, std::move(table));
}

Oracle Oracle::from_bitstring(const std::string& table) {
  int n = 0;
  while ((std::size_t{1} << n) < table.size()) ++n;
  std::vector<std::uint8_t> bits(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] != '0' && table[i] != '1') {
      throw InvalidArgument("Oracle: table string may only contain 0 and 1");
    }
    bits[i] = table[i] == '1' ? 1 : 0;
  }
  return Oracle(n, std::move(bits));
}

std::vector<int> Oracle::signed_view() const {
  std::vector<int> x(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) x[i] = table_[i] ? -1 : 1;
  return x;
}

std::uint64_t Oracle::to_bits() const {
  if (table_.size() > 64) throw InvalidArgument("Oracle::to_bits needs 2^n <= 64");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < table_.size(); ++i) bits |= std::uint64_t{table_[i]} << i;
  return bits;
}

std::string Oracle::to_bitstring() const {
  std::string s(table_.size(), '0');
  for (std::size_t i = 0; i < table_.size(); ++i) s[i] = table_[i] ? '1' : '0';
  return s;
}

Oracle Oracle::overwritten(const std::map<std::uint64_t, int>& overrides) const {
  auto table = table_;
  for (const auto& [i, v] : overrides) {
    if (i >= table.size()) throw InvalidArgument("Oracle::overwritten: index out of range");
    table[i] = static_cast<std::uint8_t>(v != 0);
  }
  return Oracle(n_, std::move(table));
}

std::vector<std::uint64_t> Oracle::diff(const Oracle& other) const {
  if (other.n_ != n_) throw DimensionMismatch("Oracle::diff: oracles have different n");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] != other.table_[i]) out.push_back(i);
  }
  return out;
}

std::vector<Oracle> all_oracles(int n) {
  const std::size_t N = std::size_t{1} << n;
  if (N > 20) throw SizeLimitExceeded("all_oracles: 2^N oracles with N=" + std::to_string(N));
  std::vector<Oracle> out;
  out.reserve(std::size_t{1} << N);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << N); ++bits) {
    out.push_back(Oracle::from_bits(n, bits));
  }
  return out;
}

nlohmann::json to_json(const Oracle& oracle) {
  return {{"n", oracle.n()}, {"table", oracle.to_bitstring()}};
}

Oracle oracle_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  Oracle o = Oracle::from_bitstring(j.at("table").get<std::string>());
  if (o.n() != n || o.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch("oracle JSON: table length does not match n=" + std::to_string(n));
  }
  return o;
}

}  // namespace qromlab::quantum_sim
