#include "qromlab/linalg.hpp"

#include <cmath>
#include <limits>

#include "qromlab/error.hpp"

namespace qromlab {

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const CMatrix defect = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

RVector hermitian_eigenvalues(const CMatrix& h) {
  if (h.rows() == 0) return RVector();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

CMatrix psd_power(const CMatrix& rho, Complex z, double cutoff) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
  const RVector& vals = solver.eigenvalues();
  const CMatrix& vecs = solver.eigenvectors();
  CVector scaled(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    scaled(i) = vals(i) > cutoff ? std::pow(Complex(vals(i), 0.0), z) : Complex(0.0, 0.0);
  }
  return vecs * scaled.asDiagonal() * vecs.adjoint();
}

CMatrix support_projector(const CMatrix& rho, double cutoff) {
  return psd_power(rho, Complex(0.0, 0.0), cutoff);
}

double half_trace_norm(const CMatrix& hermitian) {
  const RVector vals = hermitian_eigenvalues(hermitian);
  return 0.5 * vals.cwiseAbs().sum();
}

double entropy_bits(const RVector& spectrum, double clamp) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum(i);
    if (p > clamp) s -= p * std::log2(p);
  }
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix_to_json: matrix is not square");
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return data;
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("complex matrix: expected an array of [re, im] pairs");
  const auto count = static_cast<Eigen::Index>(j.size());
  auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (dim * dim != count) {
    throw DimensionMismatch("complex matrix: " + std::to_string(count) +
                            " entries do not form a square matrix");
  }
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      const auto& c = j[static_cast<std::size_t>(i * dim + k)];
      m(i, k) = Complex(c.at(0).get<double>(), c.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace qromlab
