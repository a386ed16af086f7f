// types.hpp: Dense operator aliases and the validated operator wrappers shared by all modules

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace adpath {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kHermitianTol = 1e-12;

// Largest entrywise modulus of A - A†.
double hermiticity_defect(const Matrix& A);

// Square complex matrix equal to its adjoint (entrywise within kHermitianTol).
// Construction validates; the stored matrix is symmetrized so downstream
// eigensolvers see an exactly Hermitian input.
class HermitianOperator {
public:
    HermitianOperator() = default;
    explicit HermitianOperator(Matrix m, double tol = kHermitianTol);

    static HermitianOperator zero(Eigen::Index dim);
    static HermitianOperator identity(Eigen::Index dim);

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

private:
    Matrix m_;
};

inline constexpr double kDensityTol = 1e-10;
inline constexpr double kPositivityTol = 1e-8;

// Density matrix: Hermitian, unit trace, positive semidefinite (tolerances above).
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Matrix m);

    // Skips validation; used by the integrator, which checks its samples itself.
    static DensityMatrix unchecked(Matrix m);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

    double trace_error() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;

private:
    Matrix m_;
};

namespace pauli {
Matrix x();
Matrix y();
Matrix z();
Matrix identity();
// v·σ
Matrix dot(const Vec3& v);
} // namespace pauli

} // namespace adpath
