#include "qromlab/info_theory/product_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qromlab/error.hpp"

namespace qromlab::info_theory {

ProductMixture::ProductMixture(std::vector<double> weights) : weights_(std::move(weights)) {
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw InvalidArgument("ProductMixture: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidArgument("ProductMixture: weights sum to " + std::to_string(total));
  }
}

void ProductMixture::add_vectors(const std::string& label, const std::vector<CVector>& vectors) {
  if (vectors.size() != terms()) {
    throw DimensionMismatch("ProductMixture: system '" + label + "' has " +
                            std::to_string(vectors.size()) + " vectors for " +
                            std::to_string(terms()) + " terms");
  }
  const auto k = static_cast<Eigen::Index>(terms());
  const auto dim = k == 0 ? 0 : vectors[0].size();
  CMatrix v(dim, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (vectors[static_cast<std::size_t>(i)].size() != dim) {
      throw DimensionMismatch("ProductMixture: vectors of system '" + label + "' differ in size");
    }
    v.col(i) = vectors[static_cast<std::size_t>(i)];
  }
  add_gram(label, v.adjoint() * v);
}

void ProductMixture::add_classical(const std::string& label,
                                   const std::vector<std::uint64_t>& values) {
  if (values.size() != terms()) {
    throw DimensionMismatch("ProductMixture: classical system '" + label + "' needs one value per term");
  }
  const auto k = static_cast<Eigen::Index>(terms());
  CMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g(i, j) = values[static_cast<std::size_t>(i)] == values[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
    }
  }
  add_gram(label, std::move(g));
  classical_[label] = values;
}

void ProductMixture::add_gram(const std::string& label, CMatrix gram) {
  const auto k = static_cast<Eigen::Index>(terms());
  if (gram.rows() != k || gram.cols() != k) {
    throw DimensionMismatch("ProductMixture: Gram matrix of '" + label + "' is not K x K");
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(gram(i, i) - 1.0) > 1e-9) {
      throw InvalidArgument("ProductMixture: system '" + label + "' has a non-unit vector");
    }
  }
  if (!grams_.emplace(label, std::move(gram)).second) {
    throw InvalidArgument("ProductMixture: duplicate system '" + label + "'");
  }
}

const CMatrix& ProductMixture::gram(const std::string& label) const {
  auto it = grams_.find(label);
  if (it == grams_.end()) throw InvalidArgument("ProductMixture: unknown system '" + label + "'");
  return it->second;
}

const std::vector<std::uint64_t>& ProductMixture::classical_values(const std::string& label) const {
  static const std::vector<std::uint64_t> none;
  gram(label);
  auto it = classical_.find(label);
  return it == classical_.end() ? none : it->second;
}

CMatrix ProductMixture::joint_gram(const Factors& factors) const {
  const auto k = static_cast<Eigen::Index>(terms());
  CMatrix g = CMatrix::Ones(k, k);
  for (const auto& f : factors) {
    if (f.copies < 0) throw InvalidArgument("ProductMixture: negative copy count");
    if (f.copies == 0) continue;
    const CMatrix& s = gram(f.label);
    if (f.copies == 1) {
      g = g.cwiseProduct(s);
    } else {
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) g(i, j) *= std::pow(s(i, j), f.copies);
      }
    }
  }
  return g;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

double ProductMixture::entropy(const Factors& factors, const NumericPolicy& policy) const {
  const CMatrix g = joint_gram(factors);
  std::vector<std::size_t> live;
  for (std::size_t k = 0; k < terms(); ++k) {
    if (weights_[k] > 0.0) live.push_back(k);
  }
  // Exact zeros in the Gram (classical factors, orthogonal states) make the
  // weighted Gram block diagonal; diagonalize each block separately.
  std::vector<std::size_t> parent(live.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      const auto gi = static_cast<Eigen::Index>(live[i]);
      const auto gj = static_cast<Eigen::Index>(live[j]);
      if (std::abs(g(gi, gj)) > 1e-15) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < live.size(); ++i) blocks[find_root(parent, i)].push_back(live[i]);
  double s = 0.0;
  for (const auto& [root, members] : blocks) {
    const auto n = static_cast<Eigen::Index>(members.size());
    if (n == 1) {
      const double p = weights_[members[0]];
      if (p > policy.eigenvalue_clamp) s -= p * std::log2(p);
      continue;
    }
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto a = members[static_cast<std::size_t>(i)];
        const auto b = members[static_cast<std::size_t>(j)];
        m(i, j) = std::sqrt(weights_[a] * weights_[b]) *
                  g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
    s += entropy_bits(hermitian_eigenvalues(m), policy.eigenvalue_clamp);
  }
  return s;
}

double ProductMixture::cmi(const Factors& a, const Factors& b, const Factors& c,
                           const NumericPolicy& policy) const {
  auto cat = [](Factors x, const Factors& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  return entropy(cat(a, c), policy) + entropy(cat(b, c), policy) -
         entropy(cat(cat(a, b), c), policy) - entropy(c, policy);
}

CMatrix ProductMixture::coordinates(const Factors& factors, const NumericPolicy& policy) const {
  const CMatrix g = joint_gram(factors);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(g);
  const RVector& vals = solver.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = vals.size(); i-- > 0;) {
    if (vals(i) > policy.pinv_cutoff) keep.push_back(i);
  }
  CMatrix x(static_cast<Eigen::Index>(keep.size()), g.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    x.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(vals(keep[r])) * solver.eigenvectors().col(keep[r]).adjoint();
  }
  return x;
}

MultipartiteState ProductMixture::dense_state(const std::vector<Factors>& groups,
                                              const Labels& labels,
                                              const NumericPolicy& policy) const {
  if (groups.size() != labels.size()) {
    throw InvalidArgument("dense_state: one label per group required");
  }
  std::vector<CMatrix> coords;
  std::vector<System> systems;
  std::size_t dim = 1;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    coords.push_back(coordinates(groups[g], policy));
    const auto r = static_cast<int>(std::max<Eigen::Index>(coords.back().rows(), 1));
    if (coords.back().rows() == 0) coords.back() = CMatrix::Ones(1, static_cast<Eigen::Index>(terms()));
    systems.push_back({labels[g], r});
    dim *= static_cast<std::size_t>(r);
  }
  if (dim > 4096) {
    throw SizeLimitExceeded("dense_state: compressed dimension " + std::to_string(dim) +
                            " exceeds 4096");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  CMatrix rho = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < terms(); ++k) {
    if (weights_[k] == 0.0) continue;
    CVector v = CVector::Ones(1);
    for (const auto& c : coords) v = kron(v, CVector(c.col(static_cast<Eigen::Index>(k))));
    rho += weights_[k] * v * v.adjoint();
  }
  return MultipartiteState(std::move(systems), std::move(rho));
}

double signed_ensemble_trace_norm(const std::vector<double>& coefficients, const CMatrix& gram,
                                  double cutoff) {
  if (gram.rows() != static_cast<Eigen::Index>(coefficients.size())) {
    throw DimensionMismatch("signed_ensemble_trace_norm: Gram size does not match coefficients");
  }
  if (coefficients.empty()) return 0.0;
  const CMatrix root = psd_power(gram, Complex(0.5, 0.0), cutoff);
  const RVector c = Eigen::Map<const RVector>(coefficients.data(),
                                              static_cast<Eigen::Index>(coefficients.size()));
  const CMatrix m = root * c.cast<Complex>().asDiagonal() * root;
  return half_trace_norm(0.5 * (m + m.adjoint()));
}

MixtureRecovery recover_from_mixture(const ProductMixture& mixture, const Factors& a,
                                     const Factors& e, const Factors& b, RecoveryKind kind,
                                     const NumericPolicy& policy, const RotationGrid& grid) {
  const auto K = static_cast<Eigen::Index>(mixture.terms());
  const auto& w = mixture.weights();

  std::vector<std::uint64_t> a_values;
  CMatrix xa;
  if (a.size() == 1 && a[0].copies == 1 && !mixture.classical_values(a[0].label).empty()) {
    const auto& vals = mixture.classical_values(a[0].label);
    a_values = vals;
    std::sort(a_values.begin(), a_values.end());
    a_values.erase(std::unique(a_values.begin(), a_values.end()), a_values.end());
    xa = CMatrix::Zero(static_cast<Eigen::Index>(a_values.size()), K);
    for (Eigen::Index k = 0; k < K; ++k) {
      const auto pos = std::lower_bound(a_values.begin(), a_values.end(),
                                        vals[static_cast<std::size_t>(k)]) -
                       a_values.begin();
      xa(pos, k) = 1.0;
    }
  } else {
    xa = mixture.coordinates(a, policy);
  }
  CMatrix xe = mixture.coordinates(e, policy);
  if (xe.rows() == 0) xe = CMatrix::Ones(1, K);
  const auto da = static_cast<int>(xa.rows());
  const auto de = static_cast<int>(xe.rows());

  const auto dae = static_cast<Eigen::Index>(da) * de;
  CMatrix rho_ae = CMatrix::Zero(dae, dae);
  for (Eigen::Index k = 0; k < K; ++k) {
    if (w[static_cast<std::size_t>(k)] == 0.0) continue;
    const CVector v = kron(CVector(xa.col(k)), CVector(xe.col(k)));
    rho_ae += w[static_cast<std::size_t>(k)] * v * v.adjoint();
  }
  RecoveryChannel ch = build_recovery_channel(rho_ae, da, de, kind, policy, grid);

  // rho_{AEB} - sigma_{A'EB} as a signed ensemble of rank-one terms u (x) b_k.
  const auto dout = static_cast<Eigen::Index>(ch.dim_a_out()) * de;
  std::vector<CVector> u;
  std::vector<double> coeff;
  std::vector<Eigen::Index> term;
  double abort = 0.0;
  for (Eigen::Index k = 0; k < K; ++k) {
    const double p = w[static_cast<std::size_t>(k)];
    if (p == 0.0) continue;
    CVector padded = CVector::Zero(ch.dim_a_out());
    padded.head(da) = xa.col(k);
    u.push_back(kron(padded, CVector(xe.col(k))));
    coeff.push_back(p);
    term.push_back(k);
    for (auto& y : ch.apply_to_vector(xe.col(k))) {
      if (y.squaredNorm() < 1e-30) continue;
      abort += p * y.tail(de).squaredNorm();
      u.push_back(std::move(y));
      coeff.push_back(-p);
      term.push_back(k);
    }
  }
  const CMatrix gb = mixture.joint_gram(b);
  const auto J = static_cast<Eigen::Index>(u.size());
  CMatrix ymat(dout, J);
  for (Eigen::Index j = 0; j < J; ++j) ymat.col(j) = u[static_cast<std::size_t>(j)];
  CMatrix gram = ymat.adjoint() * ymat;
  for (Eigen::Index i = 0; i < J; ++i) {
    for (Eigen::Index j = 0; j < J; ++j) {
      gram(i, j) *= gb(term[static_cast<std::size_t>(i)], term[static_cast<std::size_t>(j)]);
    }
  }

  RecoveryReport report;
  report.trace_distance = signed_ensemble_trace_norm(coeff, gram, policy.eigenvalue_clamp);
  report.cmi = b.empty() ? 0.0 : mixture.cmi(a, b, e, policy);
  report.fr_bound = fawzi_renner_bound(report.cmi);
  report.slack = report.fr_bound - report.trace_distance;
  report.abort_probability = abort;
  return {std::move(ch), std::move(a_values), std::move(xe), report};
}

}  // namespace qromlab::info_theory
