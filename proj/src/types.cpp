#include "adpath/types.hpp"

#include "adpath/error.hpp"

#include <string>

namespace adpath {

double hermiticity_defect(const Matrix& A) {
    if (A.rows() != A.cols()) return std::numeric_limits<double>::infinity();
    return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix m, double tol) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "operator must be square and non-empty");
    }
    const double defect = hermiticity_defect(m);
    if (!(defect <= tol)) {
        throw Error(ErrorKind::NotHermitian, "max |A - A^dagger| = " + std::to_string(defect));
    }
    m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
    return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "density matrix must be square and non-empty");
    }
    if (hermiticity_error() > kDensityTol || trace_error() > kDensityTol) {
        throw Error(ErrorKind::InvalidState, "density matrix must be Hermitian with unit trace");
    }
    if (min_eigenvalue() < -kPositivityTol) {
        throw Error(ErrorKind::InvalidState, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::unchecked(Matrix m) {
    DensityMatrix d;
    d.m_ = std::move(m);
    return d;
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::trace_error() const {
    return std::abs(m_.trace() - cplx(1.0, 0.0));
}

double DensityMatrix::hermiticity_error() const {
    return hermiticity_defect(m_);
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

namespace pauli {

Matrix x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

Matrix y() {
    Matrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0),
         cplx(0.0, 1.0), 0.0;
    return m;
}

Matrix z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix dot(const Vec3& v) {
    return v(0) * x() + v(1) * y() + v(2) * z();
}

} // namespace pauli

} // namespace adpath
