#include "qromlab/boolean_poly/multilinear_poly.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qromlab/error.hpp"

namespace qromlab::boolean_poly {

namespace {

void check_dense(int n) {
  if (n > MultilinearPoly::kMaxDenseVariables) {
    throw SizeLimitExceeded("polynomial on N=" + std::to_string(n) +
                            " variables needs 2^N evaluations; limit is N <= " +
                            std::to_string(MultilinearPoly::kMaxDenseVariables));
  }
}

}  // namespace

void walsh_hadamard(std::vector<double>& v) {
  if (!std::has_single_bit(v.size())) {
    throw InvalidArgument("walsh_hadamard: length " + std::to_string(v.size()) + " is not a power of two");
  }
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

MultilinearPoly::MultilinearPoly(int num_vars, std::map<std::uint64_t, double> coeffs,
                                 double zero_threshold)
    : n_(num_vars), threshold_(zero_threshold) {
  if (num_vars < 0 || num_vars > kMaxVariables) {
    throw InvalidArgument("MultilinearPoly: N=" + std::to_string(num_vars) + " out of range");
  }
  const std::uint64_t limit = num_vars == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_vars) - 1;
  for (const auto& [mask, value] : coeffs) {
    if (mask & ~limit) {
      throw DimensionMismatch("MultilinearPoly: monomial mask uses a variable >= N");
    }
    if (std::abs(value) > threshold_) coeffs_.emplace(mask, value);
  }
}

MultilinearPoly MultilinearPoly::from_values(int num_vars, const std::vector<double>& values,
                                             const NumericPolicy& policy, bool exact) {
  check_dense(num_vars);
  if (values.size() != (std::size_t{1} << num_vars)) {
    throw DimensionMismatch("from_values: expected 2^N values");
  }
  std::vector<double> a = values;
  walsh_hadamard(a);
  const double scale = 1.0 / static_cast<double>(a.size());
  double max_abs = 0.0;
  for (auto& v : a) {
    v *= scale;
    max_abs = std::max(max_abs, std::abs(v));
  }
  const double threshold = exact ? 0.0 : policy.coeff_zero_rel * max_abs;
  std::map<std::uint64_t, double> coeffs;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (std::abs(a[s]) > threshold) coeffs.emplace(s, a[s]);
  }
  return MultilinearPoly(num_vars, std::move(coeffs), threshold);
}

MultilinearPoly MultilinearPoly::from_function(int num_vars,
                                               const std::function<double(std::uint64_t)>& f,
                                               const NumericPolicy& policy, bool exact) {
  check_dense(num_vars);
  std::vector<double> values(std::size_t{1} << num_vars);
  for (std::size_t h = 0; h < values.size(); ++h) values[h] = f(h);
  return from_values(num_vars, values, policy, exact);
}

double MultilinearPoly::coefficient(std::uint64_t mask) const {
  auto it = coeffs_.find(mask);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int MultilinearPoly::degree() const {
  int d = -1;
  for (const auto& [mask, v] : coeffs_) d = std::max(d, std::popcount(mask));
  return d;
}

double MultilinearPoly::evaluate(std::uint64_t h) const {
  double s = 0.0;
  for (const auto& [mask, v] : coeffs_) s += (std::popcount(mask & h) & 1) ? -v : v;
  return s;
}

double MultilinearPoly::evaluate(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("evaluate: point has wrong length");
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == -1) {
      h |= std::uint64_t{1} << i;
    } else if (x[i] != 1) {
      throw InvalidArgument("evaluate: point entries must be +-1");
    }
  }
  return evaluate(h);
}

std::vector<double> MultilinearPoly::evaluate_all() const {
  check_dense(n_);
  std::vector<double> v(std::size_t{1} << n_, 0.0);
  for (const auto& [mask, c] : coeffs_) v[mask] = c;
  walsh_hadamard(v);
  return v;
}

bool MultilinearPoly::nonzero_at(std::uint64_t h) const {
  return std::abs(evaluate(h)) > threshold_;
}

MultilinearPoly restrict(const MultilinearPoly& f, const PartialAssignment& eta) {
  std::uint64_t fixed = 0;
  std::uint64_t negative = 0;
  for (const auto& [i, v] : eta.entries()) {
    if (static_cast<int>(i) >= f.num_vars()) {
      throw DimensionMismatch("restrict: assignment index " + std::to_string(i) +
                              " outside N=" + std::to_string(f.num_vars()));
    }
    fixed |= std::uint64_t{1} << i;
    if (v == -1) negative |= std::uint64_t{1} << i;
  }
  std::map<std::uint64_t, double> out;
  for (const auto& [mask, c] : f.coeffs()) {
    const double sign = (std::popcount(mask & negative) & 1) ? -1.0 : 1.0;
    out[mask & ~fixed] += sign * c;
  }
  return MultilinearPoly(f.num_vars(), std::move(out), f.zero_threshold());
}

nlohmann::json to_json(const MultilinearPoly& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [mask, v] : f.coeffs()) coeffs.push_back({{"mask", mask}, {"value", v}});
  return {{"N", f.num_vars()}, {"coeffs", coeffs}, {"zero_threshold", f.zero_threshold()}};
}

MultilinearPoly poly_from_json(const nlohmann::json& j) {
  std::map<std::uint64_t, double> coeffs;
  for (const auto& c : j.at("coeffs")) {
    coeffs[c.at("mask").get<std::uint64_t>()] += c.at("value").get<double>();
  }
  return MultilinearPoly(j.at("N").get<int>(), std::move(coeffs), j.value("zero_threshold", 0.0));
}

}  // namespace qromlab::boolean_poly
