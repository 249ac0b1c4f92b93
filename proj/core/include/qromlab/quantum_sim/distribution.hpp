#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qromlab/linalg.hpp"
#include "qromlab/numeric_policy.hpp"

namespace qromlab::quantum_sim {

class SimState;

/// Distribution over classical outcome strings. All keys share one width.
class OutputDistribution {
 public:
  using Map = std::map<std::string, double>;

  OutputDistribution() = default;
  explicit OutputDistribution(Map probabilities);

  double operator[](const std::string& outcome) const;
  const Map& probabilities() const { return probs_; }
  auto begin() const { return probs_.begin(); }
  auto end() const { return probs_.end(); }
  bool empty() const { return probs_.empty(); }

  double total() const;
  /// Outcomes with probability > threshold.
  std::vector<std::string> support(double threshold = default_policy().support_threshold) const;
  /// Key width, or -1 for an empty distribution.
  int width() const;
  void validate(const NumericPolicy& policy = default_policy()) const;

 private:
  Map probs_;
};

/// 1/2 sum_x |p(x) - q(x)|
double tv_distance(const OutputDistribution& p, const OutputDistribution& q);
/// 1/2 ||rho - sigma||_1
double trace_distance(const CMatrix& rho, const CMatrix& sigma);
double trace_distance(const SimState& rho, const SimState& sigma);
/// sum_{x not in SUPP(q)} p(x)
double support_escape_probability(const OutputDistribution& p, const OutputDistribution& q,
                                  double threshold = default_policy().support_threshold);

nlohmann::json to_json(const OutputDistribution& dist);

}  // namespace qromlab::quantum_sim
