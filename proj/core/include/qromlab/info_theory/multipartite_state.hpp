#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qromlab/linalg.hpp"
#include "qromlab/numeric_policy.hpp"

namespace qromlab::info_theory {

struct System {
  std::string label;
  int dim = 1;
  friend bool operator==(const System&, const System&) = default;
};

using Labels = std::vector<std::string>;

/// Density matrix over an ordered list of labelled subsystems. The first
/// system is the most significant tensor factor.
class MultipartiteState {
 public:
  MultipartiteState(std::vector<System> systems, CMatrix rho);
  static MultipartiteState from_pure(std::vector<System> systems, const CVector& psi);
  /// Tensor product, systems of `a` first.
  static MultipartiteState product(const MultipartiteState& a, const MultipartiteState& b);

  const std::vector<System>& systems() const { return systems_; }
  const CMatrix& density() const { return rho_; }
  std::size_t dimension() const { return static_cast<std::size_t>(rho_.rows()); }
  Labels labels() const;
  bool contains(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;
  /// Product of the dims of the named systems.
  std::size_t dimension_of(const Labels& labels) const;

  /// Partial trace onto `keep`, with systems reordered to the order given.
  MultipartiteState reduced(const Labels& keep) const;
  /// Same state with systems reordered; `order` must be a permutation of labels().
  MultipartiteState permuted(const Labels& order) const;
  MultipartiteState relabeled(const std::string& from, const std::string& to) const;

  /// Hermitian, PSD within psd_tol, unit trace within probability_sum_tol.
  void validate(const NumericPolicy& policy = default_policy()) const;

 private:
  std::vector<System> systems_;
  CMatrix rho_;
};

/// Embeds system `label` (dim k) into a larger space of dim `new_dim` >= k,
/// renaming it to `new_label`.
MultipartiteState pad_system(const MultipartiteState& state, const std::string& label,
                             int new_dim, const std::string& new_label);

/// 1/2 ||rho - sigma||_1; systems must match in order and dims.
double trace_distance(const MultipartiteState& rho, const MultipartiteState& sigma);

nlohmann::json to_json(const MultipartiteState& state);
MultipartiteState multipartite_from_json(const nlohmann::json& j);

}  // namespace qromlab::info_theory
