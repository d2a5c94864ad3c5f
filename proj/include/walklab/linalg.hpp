#pragma once

#include <Eigen/Dense>
#include <complex>

namespace walklab {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Kronecker product A (x) B.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Largest singular value.
inline double op_norm(const Matrix& a) {
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    return a.jacobiSvd().singularValues()(0);
}

/// Sum of singular values.
inline double trace_norm(const Matrix& a) {
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    return a.jacobiSvd().singularValues().sum();
}

inline double hs_norm(const Matrix& a) { return a.norm(); }

/// <A,B> = tr(B^* A), linear in the first argument.
inline cdouble hs_inner(const Matrix& a, const Matrix& b) {
    return (b.adjoint() * a).trace();
}

} // namespace walklab
