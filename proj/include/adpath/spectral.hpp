// spectral.hpp: Ordered spectral decomposition and gauge-free projection derivatives

#pragma once

#include "adpath/paths.hpp"
#include "adpath/types.hpp"

#include <cstddef>
#include <vector>

namespace adpath {

inline constexpr double kDefaultGapTol = 1e-10;

// H = Σ_a e_a P_a with e_0 < e_1 < … and rank-one orthogonal projections P_a.
struct SpectralFrame {
    double q = 0.0;
    RealVector eigenvalues;
    std::vector<HermitianOperator> projections;
    // Eigenvectors as columns. Phases are arbitrary; only the projections are
    // gauge invariant and meant for comparisons.
    Matrix basis;

    Eigen::Index dim() const noexcept { return eigenvalues.size(); }
    const Matrix& P(std::size_t a) const { return projections.at(a).matrix(); }
    Matrix reconstruct() const;
    double min_gap() const;
};

// Throws Error(DegenerateSpectrum) if any consecutive gap is <= gap_tol.
SpectralFrame spectral_frame(const HermitianOperator& H, double gap_tol = kDefaultGapTol, double q = 0.0);

// Eigen-decomposition only (eigenvalues ascending, eigenvectors as columns),
// with the same gap check. Cheaper than a full frame; used inside integrators.
void eigensystem(const Matrix& H, RealVector& eigenvalues, Matrix& basis, double gap_tol = kDefaultGapTol);

// P'_a = Σ_{b≠a} (P_b H' P_a + P_a H' P_b)/(e_a − e_b).
HermitianOperator projection_derivative(const SpectralFrame& frame, const HermitianOperator& dH, std::size_t a);
HermitianOperator projection_derivative(const HamiltonianPath& path, double q, std::size_t a,
                                        double gap_tol = kDefaultGapTol);

} // namespace adpath
