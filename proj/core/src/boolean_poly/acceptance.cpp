#include "qromlab/boolean_poly/acceptance.hpp"

#include <string>
#include <vector>

#include "qromlab/error.hpp"
#include "qromlab/parallel.hpp"

namespace qromlab::boolean_poly {

using quantum_sim::Oracle;

MultilinearPoly polynomial_of_oracle_function(int n, const std::function<double(const Oracle&)>& p,
                                              const PartialAssignment& restriction,
                                              const NumericPolicy& policy, unsigned jobs) {
  const int N = 1 << n;
  if (n > 4 || N > MultilinearPoly::kMaxDenseVariables) {
    throw SizeLimitExceeded("acceptance polynomial over N=2^" + std::to_string(n) +
                            " oracle entries exceeds the exhaustive limit N <= " +
                            std::to_string(MultilinearPoly::kMaxDenseVariables));
  }
  if (restriction.size() > 0 && (restriction.support_mask() >> N) != 0) {
    throw DimensionMismatch("restriction fixes an index beyond the N=" + std::to_string(N) +
                            " oracle entries");
  }
  const std::size_t points = std::size_t{1} << N;
  std::vector<double> values(points, 0.0);
  // Only points already consistent with the restriction need simulating.
  std::vector<std::uint64_t> free_points;
  for (std::uint64_t h = 0; h < points; ++h) {
    if (restriction.apply(h) == h) free_points.push_back(h);
  }
  std::vector<double> free_values(free_points.size());
  parallel_for(free_points.size(), jobs, [&](std::size_t k) {
    free_values[k] = p(Oracle::from_bits(n, free_points[k]));
  });
  std::vector<double> by_point(points, 0.0);
  for (std::size_t k = 0; k < free_points.size(); ++k) by_point[free_points[k]] = free_values[k];
  for (std::uint64_t h = 0; h < points; ++h) values[h] = by_point[restriction.apply(h)];
  return MultilinearPoly::from_values(N, values, policy);
}

double outcome_probability(const quantum_sim::QueryAlgorithm& alg,
                           const quantum_sim::SimState& final_state, const TargetOutcome& target) {
  std::vector<std::string> regs;
  std::string bits;
  for (const auto& [field, value] : target) {
    const auto& r = alg.output(field);
    if (static_cast<int>(value.size()) != alg.layout().width(r)) {
      throw DimensionMismatch("target for field '" + field + "' has " +
                              std::to_string(value.size()) + " bits, field has " +
                              std::to_string(alg.layout().width(r)));
    }
    regs.insert(regs.end(), r.begin(), r.end());
    bits += value;
  }
  return quantum_sim::measure(final_state, regs)[bits];
}

MultilinearPoly extract_acceptance_poly(const quantum_sim::QueryAlgorithm& alg,
                                        const TargetOutcome& target,
                                        const quantum_sim::AlgorithmInput& input,
                                        const PartialAssignment& restriction,
                                        const NumericPolicy& policy, unsigned jobs, int oracle_n) {
  const int n = oracle_n >= 0 ? oracle_n : alg.n_in();
  MultilinearPoly f = polynomial_of_oracle_function(
      n,
      [&](const Oracle& h) {
        return outcome_probability(alg, quantum_sim::run(alg, h, input), target);
      },
      restriction, policy, jobs);
  if (f.degree() > 2 * alg.d()) {
    throw InvariantViolation("acceptance polynomial of '" + alg.name() + "' has degree " +
                             std::to_string(f.degree()) + " > 2d = " +
                             std::to_string(2 * alg.d()));
  }
  return f;
}

}  // namespace qromlab::boolean_poly
