#include "adpath/spectral.hpp"

#include "adpath/error.hpp"

#include <string>

namespace adpath {

void eigensystem(const Matrix& H, RealVector& eigenvalues, Matrix& basis, double gap_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorKind::DegenerateSpectrum, "eigensolver failed to converge");
    }
    eigenvalues = es.eigenvalues();
    for (Eigen::Index a = 0; a + 1 < eigenvalues.size(); ++a) {
        const double gap = eigenvalues(a + 1) - eigenvalues(a);
        if (!(gap > gap_tol)) {
            throw Error(ErrorKind::DegenerateSpectrum,
                        "gap e_" + std::to_string(a + 1) + " - e_" + std::to_string(a) + " = " + std::to_string(gap));
        }
    }
    basis = es.eigenvectors();
}

SpectralFrame spectral_frame(const HermitianOperator& H, double gap_tol, double q) {
    SpectralFrame f;
    f.q = q;
    eigensystem(H.matrix(), f.eigenvalues, f.basis, gap_tol);
    f.projections.reserve(static_cast<std::size_t>(f.dim()));
    for (Eigen::Index a = 0; a < f.dim(); ++a) {
        const Vector v = f.basis.col(a);
        f.projections.emplace_back(v * v.adjoint());
    }
    return f;
}

Matrix SpectralFrame::reconstruct() const {
    Matrix h = Matrix::Zero(dim(), dim());
    for (Eigen::Index a = 0; a < dim(); ++a) h += eigenvalues(a) * P(static_cast<std::size_t>(a));
    return h;
}

double SpectralFrame::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a + 1 < dim(); ++a) g = std::min(g, eigenvalues(a + 1) - eigenvalues(a));
    return g;
}

HermitianOperator projection_derivative(const SpectralFrame& frame, const HermitianOperator& dH, std::size_t a) {
    const auto n = static_cast<std::size_t>(frame.dim());
    if (dH.dim() != frame.dim()) throw Error(ErrorKind::DimensionMismatch, "dH does not match frame");
    if (a >= n) throw Error(ErrorKind::InvalidArgument, "projection index out of range");
    const Matrix& Pa = frame.P(a);
    const Matrix& D = dH.matrix();
    Matrix out = Matrix::Zero(frame.dim(), frame.dim());
    for (std::size_t b = 0; b < n; ++b) {
        if (b == a) continue;
        const Matrix& Pb = frame.P(b);
        const double de = frame.eigenvalues(static_cast<Eigen::Index>(a)) - frame.eigenvalues(static_cast<Eigen::Index>(b));
        out += (Pb * D * Pa + Pa * D * Pb) / de;
    }
    return HermitianOperator(std::move(out), 1e-9);
}

HermitianOperator projection_derivative(const HamiltonianPath& path, double q, std::size_t a, double gap_tol) {
    const SpectralFrame frame = spectral_frame(path.H(q), gap_tol, q);
    return projection_derivative(frame, path.dH(q), a);
}

} // namespace adpath
