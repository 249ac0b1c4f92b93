#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <vector>

namespace qromlab::boolean_poly {

/// mu : [N] -> {-1, +1, *}, stored sparsely. Points of {-1,1}^N are passed
/// either as signed vectors or as truth-table indices h with bit i set iff
/// x_i = -1 (equivalently H(i) = 1).
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::map<std::uint64_t, int> entries);

  const std::map<std::uint64_t, int>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(std::uint64_t i) const { return entries_.count(i) > 0; }
  int at(std::uint64_t i) const { return entries_.at(i); }
  std::vector<std::uint64_t> support() const;
  /// Support as a bitmask (indices must be < 64).
  std::uint64_t support_mask() const;

  void set(std::uint64_t i, int value);

  /// x^mu
  std::vector<int> apply(std::vector<int> x) const;
  std::uint64_t apply(std::uint64_t h) const;

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

 private:
  std::map<std::uint64_t, int> entries_;
};

/// mu . eta: x^{mu . eta} = (x^mu)^eta, so eta wins where both are fixed.
PartialAssignment operator*(const PartialAssignment& mu, const PartialAssignment& eta);
bool disjoint(const PartialAssignment& a, const PartialAssignment& b);

nlohmann::json to_json(const PartialAssignment& mu);
PartialAssignment assignment_from_json(const nlohmann::json& j);

}  // namespace qromlab::boolean_poly
