#include "qromlab/info_theory/entropy.hpp"

#include <cmath>
#include <set>

#include "qromlab/error.hpp"

namespace qromlab::info_theory {

namespace {

Labels join(std::initializer_list<const Labels*> parts) {
  Labels out;
  std::set<std::string> seen;
  for (const auto* p : parts) {
    for (const auto& l : *p) {
      if (!seen.insert(l).second) {
        throw InvalidArgument("label sets overlap on '" + l + "'");
      }
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

double von_neumann_entropy(const MultipartiteState& state, const Labels& labels,
                           const NumericPolicy& policy) {
  if (labels.empty()) return 0.0;
  const MultipartiteState r = state.reduced(labels);
  return entropy_bits(hermitian_eigenvalues(r.density()), policy.eigenvalue_clamp);
}

double cmi(const MultipartiteState& state, const Labels& a, const Labels& b, const Labels& e,
           const NumericPolicy& policy) {
  const Labels abe = join({&a, &b, &e});
  return von_neumann_entropy(state, join({&a, &e}), policy) +
         von_neumann_entropy(state, join({&b, &e}), policy) -
         von_neumann_entropy(state, abe, policy) - von_neumann_entropy(state, e, policy);
}

CmiReport classify_cmi(double value, const NumericPolicy& policy) {
  CmiReport r;
  r.value = value;
  r.negative_within_tolerance = value < 0.0 && value >= -policy.cmi_negative_tol;
  r.violates_ssa = value < -policy.cmi_negative_tol;
  return r;
}

SsaCheck check_strong_subadditivity(const MultipartiteState& state, const Labels& a,
                                    const Labels& b, const Labels& c,
                                    const std::optional<Labels>& d, const NumericPolicy& policy) {
  const Labels none;
  const Labels& dd = d ? *d : none;
  const double slack = von_neumann_entropy(state, join({&a, &c, &dd}), policy) +
                       von_neumann_entropy(state, join({&a, &b, &dd}), policy) -
                       von_neumann_entropy(state, join({&a, &b, &c, &dd}), policy) -
                       von_neumann_entropy(state, join({&a, &dd}), policy);
  return {slack >= -1e-7, slack};
}

std::vector<double> chain_rule_decomposition(const MultipartiteState& state, const Labels& a,
                                             const Labels& c, const Labels& b_labels,
                                             const NumericPolicy& policy) {
  std::vector<double> terms;
  Labels cond = c;
  for (const auto& b : b_labels) {
    terms.push_back(cmi(state, {b}, a, cond, policy));
    cond.push_back(b);
  }
  return terms;
}

double entropy_accumulation_bound(const quantum_sim::QueryAlgorithm& alg) {
  return 2.0 * alg.d() * (alg.n_in() + 1);
}

double oracle_averaged_entropy(const quantum_sim::QueryAlgorithm& alg,
                               const quantum_sim::AlgorithmInput& input,
                               const std::vector<std::string>& registers,
                               const NumericPolicy& policy) {
  const auto oracles = quantum_sim::all_oracles(alg.n_in());
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << alg.layout().width(registers));
  CMatrix avg = CMatrix::Zero(dim, dim);
  for (const auto& h : oracles) {
    avg += quantum_sim::reduced_density(quantum_sim::run(alg, h, input), registers);
  }
  avg /= static_cast<double>(oracles.size());
  return entropy_bits(hermitian_eigenvalues(avg), policy.eigenvalue_clamp);
}

MarkovReductionResult select_markov_prefix(double entropy_S_A, int t,
                                           const std::function<double(int)>& prefix_cmi,
                                           bool scan_all) {
  if (t < 1) throw InvalidArgument("select_markov_prefix: needs t >= 1 copies");
  MarkovReductionResult r;
  r.t = t;
  r.entropy_S_A = entropy_S_A;
  r.j = -1;
  const double target = entropy_S_A / t + 1e-7;
  for (int j = 0; j < t; ++j) {
    const double v = prefix_cmi(j);
    r.prefix_cmis.push_back(v);
    if (r.j < 0 && v <= target) {
      r.j = j;
      r.cmi_value = v;
      if (!scan_all) break;
    }
  }
  if (r.j < 0) {
    throw InvariantViolation("select_markov_prefix: no prefix j in [0, " + std::to_string(t - 1) +
                             "] meets S(A)/t = " + std::to_string(entropy_S_A / t) +
                             "; the copies are probably not permutation invariant");
  }
  return r;
}

double permutation_asymmetry(const MultipartiteState& state, const Labels& b_labels) {
  double worst = 0.0;
  const Labels order = state.labels();
  if (b_labels.size() < 2) return 0.0;
  const auto i0 = state.index_of(b_labels[0]);
  for (std::size_t k = 1; k < b_labels.size(); ++k) {
    const auto ik = state.index_of(b_labels[k]);
    if (state.systems()[i0].dim != state.systems()[ik].dim) {
      throw DimensionMismatch("permutation check: '" + b_labels[0] + "' and '" + b_labels[k] +
                              "' have different dims");
    }
    Labels swapped = order;
    std::swap(swapped[i0], swapped[ik]);
    const CMatrix diff = state.permuted(swapped).density() - state.density();
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return worst;
}

MarkovReductionResult select_markov_prefix(const MultipartiteState& state, const Labels& a,
                                           const Labels& c, const Labels& b_labels,
                                           const NumericPolicy& policy) {
  const double asym = permutation_asymmetry(state, b_labels);
  if (asym > policy.permutation_tol) {
    throw InvariantViolation("select_markov_prefix: copies are not swap symmetric (max entry " +
                             std::to_string(asym) + ")");
  }
  const int t = static_cast<int>(b_labels.size());
  const double s_a = von_neumann_entropy(state, a, policy);
  return select_markov_prefix(s_a, t, [&](int j) {
    Labels cond = c;
    cond.insert(cond.end(), b_labels.begin(), b_labels.begin() + j);
    return cmi(state, {b_labels.back()}, a, cond, policy);
  });
}

}  // namespace qromlab::info_theory
