#include "qromlab/quantum_sim/distribution.hpp"

#include <cmath>
#include <set>

#include "qromlab/error.hpp"
#include "qromlab/quantum_sim/sim_state.hpp"

namespace qromlab::quantum_sim {

OutputDistribution::OutputDistribution(Map probabilities) : probs_(std::move(probabilities)) {
  std::size_t w = probs_.empty() ? 0 : probs_.begin()->first.size();
  for (const auto& [k, p] : probs_) {
    if (k.size() != w) throw DimensionMismatch("OutputDistribution: outcome widths differ");
  }
}

double OutputDistribution::operator[](const std::string& outcome) const {
  auto it = probs_.find(outcome);
  return it == probs_.end() ? 0.0 : it->second;
}

double OutputDistribution::total() const {
  double t = 0.0;
  for (const auto& [k, p] : probs_) t += p;
  return t;
}

std::vector<std::string> OutputDistribution::support(double threshold) const {
  std::vector<std::string> out;
  for (const auto& [k, p] : probs_) {
    if (p > threshold) out.push_back(k);
  }
  return out;
}

int OutputDistribution::width() const {
  return probs_.empty() ? -1 : static_cast<int>(probs_.begin()->first.size());
}

void OutputDistribution::validate(const NumericPolicy& policy) const {
  for (const auto& [k, p] : probs_) {
    if (p < -policy.probability_sum_tol) {
      throw InvariantViolation("OutputDistribution: negative probability for '" + k + "'");
    }
  }
  if (std::abs(total() - 1.0) > policy.probability_sum_tol) {
    throw InvariantViolation("OutputDistribution: probabilities sum to " +
                             std::to_string(total()));
  }
}

namespace {
void check_domains(const OutputDistribution& p, const OutputDistribution& q) {
  if (p.width() >= 0 && q.width() >= 0 && p.width() != q.width()) {
    throw DimensionMismatch("distributions over outcome strings of width " +
                            std::to_string(p.width()) + " and " + std::to_string(q.width()));
  }
}
}  // namespace

double tv_distance(const OutputDistribution& p, const OutputDistribution& q) {
  check_domains(p, q);
  std::set<std::string> keys;
  for (const auto& [k, v] : p) keys.insert(k);
  for (const auto& [k, v] : q) keys.insert(k);
  double s = 0.0;
  for (const auto& k : keys) s += std::abs(p[k] - q[k]);
  return 0.5 * s;
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionMismatch("trace_distance: " + std::to_string(rho.rows()) + " vs " +
                            std::to_string(sigma.rows()) + " dimensional operators");
  }
  const CMatrix diff = rho - sigma;
  return half_trace_norm(0.5 * (diff + diff.adjoint()));
}

double trace_distance(const SimState& rho, const SimState& sigma) {
  if (!(rho.layout() == sigma.layout())) {
    throw DimensionMismatch("trace_distance: states live on different register layouts");
  }
  if (rho.is_pure() && sigma.is_pure()) {
    const double overlap = std::abs(rho.amplitudes().dot(sigma.amplitudes()));
    return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  }
  return trace_distance(rho.density(), sigma.density());
}

double support_escape_probability(const OutputDistribution& p, const OutputDistribution& q,
                                  double threshold) {
  check_domains(p, q);
  double s = 0.0;
  for (const auto& [k, v] : p) {
    if (q[k] <= threshold) s += v;
  }
  return s;
}

nlohmann::json to_json(const OutputDistribution& dist) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, p] : dist) j[k] = p;
  return j;
}

}  // namespace qromlab::quantum_sim
