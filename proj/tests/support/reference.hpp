#pragma once

// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond plain data accessors (layout offsets, the
// stored unitaries, the initial state).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qromlab/quantum_sim/oracle.hpp"
#include "qromlab/quantum_sim/query_algorithm.hpp"
#include "qromlab/quantum_sim/simulator.hpp"

namespace ref {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Shift of the least significant bit of a register in the basis index.
inline int reg_shift(const qromlab::quantum_sim::RegisterLayout& layout, const std::string& name) {
  const auto& r = layout.at(name);
  return layout.total_qubits() - r.offset - r.width;
}

inline Vec apply_oracle(const qromlab::quantum_sim::QueryAlgorithm& alg, const Vec& v,
                        const qromlab::quantum_sim::Oracle& h) {
  const auto& lay = alg.layout();
  const int in_shift = reg_shift(lay, alg.spec().query_input);
  const std::uint64_t in_mask = (std::uint64_t{1} << lay.at(alg.spec().query_input).width) - 1;
  const int out_shift = reg_shift(lay, alg.spec().query_output);
  Vec out = Vec::Zero(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const auto idx = static_cast<std::uint64_t>(k);
    const std::uint64_t i = (idx >> in_shift) & in_mask;
    const std::uint64_t target = h(i) ? idx ^ (std::uint64_t{1} << out_shift) : idx;
    out(static_cast<Eigen::Index>(target)) += v(k);
  }
  return out;
}

struct RunResult {
  Vec final_state;
  std::vector<double> q;  // pre-query input-register weights summed over queries
};

inline RunResult run(const qromlab::quantum_sim::QueryAlgorithm& alg,
                     const qromlab::quantum_sim::Oracle& h, const Vec& initial) {
  RunResult r;
  r.q.assign(h.size(), 0.0);
  Vec v = initial;
  const auto& us = alg.unitaries();
  for (std::size_t t = 0; t < us.size(); ++t) {
    v = us[t] * v;
    if (t + 1 == us.size()) break;
    const auto& lay = alg.layout();
    const int shift = reg_shift(lay, alg.spec().query_input);
    const std::uint64_t mask = (std::uint64_t{1} << lay.at(alg.spec().query_input).width) - 1;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      r.q[(static_cast<std::uint64_t>(k) >> shift) & mask] += std::norm(v(k));
    }
    v = apply_oracle(alg, v, h);
  }
  r.final_state = v;
  return r;
}

inline Vec zero_state(std::size_t dim) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v(0) = 1.0;
  return v;
}

// Distribution of the concatenated registers of a pure state.
inline std::map<std::string, double> measure(const qromlab::quantum_sim::RegisterLayout& lay,
                                             const Vec& v, const std::vector<std::string>& regs) {
  std::map<std::string, double> out;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double p = std::norm(v(k));
    if (p == 0.0) continue;
    std::string key;
    for (const auto& name : regs) {
      const int w = lay.at(name).width;
      const auto val = (static_cast<std::uint64_t>(k) >> reg_shift(lay, name)) & ((std::uint64_t{1} << w) - 1);
      for (int b = w - 1; b >= 0; --b) key += ((val >> b) & 1) ? '1' : '0';
    }
    out[key] += p;
  }
  return out;
}

// ---------------------------------------------------------------- distributions

using Dist = std::map<std::string, double>;

inline double tv(const Dist& p, const Dist& q) {
  std::set<std::string> keys;
  for (const auto& [k, v] : p) keys.insert(k);
  for (const auto& [k, v] : q) keys.insert(k);
  double s = 0.0;
  for (const auto& k : keys) {
    const double a = p.count(k) ? p.at(k) : 0.0;
    const double b = q.count(k) ? q.at(k) : 0.0;
    s += std::abs(a - b);
  }
  return s / 2.0;
}

inline double escape(const Dist& p, const Dist& q, double threshold = 1e-12) {
  double s = 0.0;
  for (const auto& [k, v] : p) {
    if (!q.count(k) || q.at(k) <= threshold) s += v;
  }
  return s;
}

// ---------------------------------------------------------------- linear algebra

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Partial trace keeping `keep` (indices into dims, output in ascending order).
inline Mat partial_trace(const Mat& rho, const std::vector<int>& dims, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  const int n = static_cast<int>(dims.size());
  std::vector<int> strides(n);
  int s = 1;
  for (int i = n - 1; i >= 0; --i) {
    strides[i] = s;
    s *= dims[i];
  }
  int dk = 1;
  for (int i : keep) dk *= dims[i];
  Mat out = Mat::Zero(dk, dk);
  auto digits = [&](int idx) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) d[i] = (idx / strides[i]) % dims[i];
    return d;
  };
  for (int r = 0; r < rho.rows(); ++r) {
    const auto dr = digits(r);
    for (int c = 0; c < rho.cols(); ++c) {
      const auto dc = digits(c);
      bool traced_equal = true;
      for (int i = 0; i < n && traced_equal; ++i) {
        if (std::find(keep.begin(), keep.end(), i) == keep.end() && dr[i] != dc[i]) traced_equal = false;
      }
      if (!traced_equal) continue;
      int kr = 0, kc = 0;
      for (int i : keep) {
        kr = kr * dims[i] + dr[i];
        kc = kc * dims[i] + dc[i];
      }
      out(kr, kc) += rho(r, c);
    }
  }
  return out;
}

inline double entropy_bits(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-14) s -= l * std::log2(l);
  }
  return s;
}

inline double entropy(const Mat& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
  if (keep.empty()) return 0.0;
  return entropy_bits(partial_trace(rho, dims, keep));
}

inline std::vector<int> join(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// I(A:B|E) = S(AE) + S(BE) - S(ABE) - S(E)
inline double cmi(const Mat& rho, const std::vector<int>& dims, const std::vector<int>& a,
                  const std::vector<int>& b, const std::vector<int>& e) {
  return entropy(rho, dims, join(a, e)) + entropy(rho, dims, join(b, e)) -
         entropy(rho, dims, join(join(a, b), e)) - entropy(rho, dims, e);
}

inline Mat psd_power(const Mat& m, double power, double cutoff = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > cutoff ? std::pow(ev(i), power) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

inline double trace_distance(const Mat& a, const Mat& b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a - b);
  return es.eigenvalues().cwiseAbs().sum() / 2.0;
}

inline Mat random_density(int dim, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat x(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) x(i, j) = Complex(g(rng), g(rng));
  Mat rho = x * x.adjoint();
  return rho / rho.trace().real();
}

// ---------------------------------------------------------------- Boolean functions

// a_S = 2^-N sum_h f(h) chi_S(h), chi_S(h) = (-1)^{|S & h|}, by definition.
inline std::vector<double> fourier(const std::vector<double>& values) {
  const std::size_t size = values.size();
  std::vector<double> a(size, 0.0);
  for (std::size_t s = 0; s < size; ++s) {
    double acc = 0.0;
    for (std::size_t h = 0; h < size; ++h) {
      acc += (__builtin_popcountll(s & h) % 2 ? -1.0 : 1.0) * values[h];
    }
    a[s] = acc / static_cast<double>(size);
  }
  return a;
}

inline double eval(const std::map<std::uint64_t, double>& coeffs, std::uint64_t h) {
  double s = 0.0;
  for (const auto& [mask, c] : coeffs) s += (__builtin_popcountll(mask & h) % 2 ? -c : c);
  return s;
}

// x^mu as a truth-table index: value +1 clears bit i, -1 sets it.
inline std::uint64_t apply(const std::map<std::uint64_t, int>& mu, std::uint64_t h) {
  for (const auto& [i, v] : mu) {
    if (v == 1) h &= ~(std::uint64_t{1} << i);
    else h |= std::uint64_t{1} << i;
  }
  return h;
}

}  // namespace ref
