#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <nlohmann/json.hpp>

namespace qromlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CSparse = Eigen::SparseMatrix<Complex>;

/// max_{ij} |(U^dag U - I)_{ij}|
double unitarity_defect(const CMatrix& u);

/// Eigenvalues (ascending) of a Hermitian matrix.
RVector hermitian_eigenvalues(const CMatrix& h);

/// rho^z on the support of a Hermitian PSD matrix: eigenvalues <= cutoff are
/// mapped to 0 (so negative powers act as a pseudo-inverse).
CMatrix psd_power(const CMatrix& rho, Complex z, double cutoff);

/// Projector onto the eigenvectors of rho with eigenvalue > cutoff.
CMatrix support_projector(const CMatrix& rho, double cutoff);

/// 1/2 * sum of singular values of a Hermitian matrix (its trace norm / 2).
double half_trace_norm(const CMatrix& hermitian);

/// Shannon/von Neumann entropy in bits of a spectrum; entries <= clamp count as 0.
double entropy_bits(const RVector& spectrum, double clamp);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Square complex matrices serialize as a flat row-major array of [re, im]
/// pairs; the dimension is recovered from the entry count.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qromlab
