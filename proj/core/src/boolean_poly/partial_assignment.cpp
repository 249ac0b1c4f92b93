#include "qromlab/boolean_poly/partial_assignment.hpp"

#include <string>

#include "qromlab/error.hpp"

namespace qromlab::boolean_poly {

PartialAssignment::PartialAssignment(std::map<std::uint64_t, int> entries) {
  for (const auto& [i, v] : entries) set(i, v);
}

std::vector<std::uint64_t> PartialAssignment::support() const {
  std::vector<std::uint64_t> out;
  for (const auto& [i, v] : entries_) out.push_back(i);
  return out;
}

std::uint64_t PartialAssignment::support_mask() const {
  std::uint64_t m = 0;
  for (const auto& [i, v] : entries_) {
    if (i >= 64) throw InvalidArgument("PartialAssignment: index " + std::to_string(i) + " >= 64");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

void PartialAssignment::set(std::uint64_t i, int value) {
  if (value != 1 && value != -1) {
    throw InvalidArgument("PartialAssignment: value for " + std::to_string(i) + " must be +-1");
  }
  entries_[i] = value;
}

std::vector<int> PartialAssignment::apply(std::vector<int> x) const {
  for (const auto& [i, v] : entries_) {
    if (i >= x.size()) throw DimensionMismatch("PartialAssignment: index beyond point length");
    x[i] = v;
  }
  return x;
}

std::uint64_t PartialAssignment::apply(std::uint64_t h) const {
  for (const auto& [i, v] : entries_) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    h = v == -1 ? (h | bit) : (h & ~bit);
  }
  return h;
}

PartialAssignment operator*(const PartialAssignment& mu, const PartialAssignment& eta) {
  auto entries = mu.entries();
  for (const auto& [i, v] : eta.entries()) entries[i] = v;
  return PartialAssignment(std::move(entries));
}

bool disjoint(const PartialAssignment& a, const PartialAssignment& b) {
  for (const auto& [i, v] : a.entries()) {
    if (b.contains(i)) return false;
  }
  return true;
}

nlohmann::json to_json(const PartialAssignment& mu) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [i, v] : mu.entries()) j[std::to_string(i)] = v;
  return j;
}

PartialAssignment assignment_from_json(const nlohmann::json& j) {
  PartialAssignment mu;
  for (const auto& [k, v] : j.items()) mu.set(std::stoull(k), v.get<int>());
  return mu;
}

}  // namespace qromlab::boolean_poly
