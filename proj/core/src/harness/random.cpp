#include "qromlab/harness/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qromlab/error.hpp"
#include "qromlab/quantum_sim/register_layout.hpp"

namespace qromlab::harness {

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

}  // namespace

CMatrix random_unitary(int dim, Rng& rng) {
  const CMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

CVector random_pure_state(int dim, Rng& rng) {
  CVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_density(int dim, int rank, Rng& rng) {
  const CMatrix g = ginibre(dim, std::max(1, rank), rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

quantum_sim::OutputDistribution random_distribution(int size, double keep, Rng& rng) {
  if (size < 1) throw InvalidArgument("random_distribution: size must be >= 1");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(size), 0.0);
  double total = 0.0;
  for (auto& x : w) {
    if (u(rng) < keep) x = u(rng);
    total += x;
  }
  if (total == 0.0) {
    w[std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng)] = 1.0;
    total = 1.0;
  }
  const int width = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(size - 1))));
  quantum_sim::OutputDistribution::Map m;
  for (int i = 0; i < size; ++i) {
    m[quantum_sim::to_bitstring(static_cast<std::uint64_t>(i), width)] = w[static_cast<std::size_t>(i)] / total;
  }
  return quantum_sim::OutputDistribution(std::move(m));
}

quantum_sim::Oracle random_oracle(int n, Rng& rng) {
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  std::uniform_int_distribution<int> bit(0, 1);
  for (auto& b : table) b = static_cast<std::uint8_t>(bit(rng));
  return quantum_sim::Oracle(n, std::move(table));
}

quantum_sim::QueryAlgorithm random_algorithm(int n, int workspace, int d, Rng& rng) {
  quantum_sim::RegisterLayout layout({{"q", n}, {"a", 1}, {"w", workspace}});
  quantum_sim::InputSpec spec;
  spec.query_input = "q";
  spec.query_output = "a";
  spec.outputs = {{"out", {"w"}}};
  const int dim = static_cast<int>(layout.dimension());
  std::vector<CMatrix> us;
  for (int k = 0; k <= d; ++k) us.push_back(random_unitary(dim, rng));
  return quantum_sim::QueryAlgorithm("random", layout, spec, std::move(us));
}

boolean_poly::MultilinearPoly random_polynomial(int num_vars, int deg, int terms, Rng& rng) {
  if (deg > num_vars) throw InvalidArgument("random_polynomial: degree exceeds variable count");
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> size(0, deg);
  std::uniform_int_distribution<int> var(0, num_vars - 1);
  auto monomial = [&](int k) {
    std::uint64_t mask = 0;
    while (std::popcount(mask) < k) mask |= std::uint64_t{1} << var(rng);
    return mask;
  };
  std::map<std::uint64_t, double> coeffs;
  int c = 0;
  while (c == 0) c = coeff(rng);
  coeffs[monomial(deg)] = c;
  for (int t = 1; t < terms; ++t) coeffs[monomial(size(rng))] += coeff(rng);
  boolean_poly::MultilinearPoly f(num_vars, coeffs);
  if (f.degree() < deg) {
    coeffs[monomial(deg)] = 1.0;
    f = boolean_poly::MultilinearPoly(num_vars, std::move(coeffs));
  }
  return f;
}

info_theory::MultipartiteState random_multipartite(const std::vector<info_theory::System>& systems,
                                                    int rank, Rng& rng) {
  int dim = 1;
  for (const auto& s : systems) dim *= s.dim;
  return info_theory::MultipartiteState(systems, random_density(dim, rank, rng));
}

}  // namespace qromlab::harness
