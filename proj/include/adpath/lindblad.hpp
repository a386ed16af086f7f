// lindblad.hpp: Dephasing Lindblad generators with their adjoints, plus the
// exponential-midpoint integrator for ε ρ̇ = L_q(ρ)
//
// Vectorization convention: column stacking, vec(A)_{i + N j} = A_ij, which is
// Eigen's native storage order. Under it vec(A X B) = (Bᵀ ⊗ A) vec(X).

#pragma once

#include "adpath/paths.hpp"
#include "adpath/spectral.hpp"
#include "adpath/types.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace adpath {

// Linear map on N×N operators stored as an N²×N² matrix acting on vec(ρ).
class Superoperator {
public:
    Superoperator() = default;
    Superoperator(Eigen::Index hilbert_dim, Matrix matrix);

    Eigen::Index hilbert_dim() const noexcept { return n_; }
    const Matrix& matrix() const noexcept { return m_; }

    Matrix apply(const Matrix& rho) const;
    // L*(A), defined by tr(L*(A) ρ) = tr(A L(ρ)) for all ρ.
    Matrix adjoint_apply(const Matrix& A) const;
    // max |Σ_i S_{(i,i),k}| over columns k: how far tr(L(ρ)) is from zero.
    double trace_preservation_defect() const;

private:
    Eigen::Index n_ = 0;
    Matrix m_;
};

Vector vectorize(const Matrix& A);
Matrix unvectorize(const Vector& v, Eigen::Index n);
Matrix kron(const Matrix& A, const Matrix& B);

// L(ρ) = −i[H, ρ] + Σ_j (2 Γ_j ρ Γ_j† − Γ_j†Γ_j ρ − ρ Γ_j†Γ_j).
Superoperator lindblad_generator(const HermitianOperator& H, const std::vector<Matrix>& jumps);

// L(ρ) = −i[H, ρ] + Σ_ab 2γ_ba P_a ρ P_b − Σ_a γ_aa {P_a, ρ}, with H rebuilt from
// the frame. γ must be real symmetric PSD (Error(NotPSD) otherwise).
Superoperator general_dephasing_generator(const SpectralFrame& frame, const RealMatrix& gamma);

// L(ρ) = −i[H, ρ] − γ Σ_{j≠k} P_j ρ P_k. Throws Error(NonPositiveRate) if γ <= 0.
Superoperator dephasing_generator(const SpectralFrame& frame, double gamma);

// Convenience wrapper over Superoperator::adjoint_apply.
Matrix adjoint_apply(const Superoperator& L, const Matrix& A);

// X = Σ_{a≠b} P_a P'_0 P_b / (i(e_a − e_b) − γ); solves L*(X) = P'_0.
Matrix witness_X(const SpectralFrame& frame, const HermitianOperator& P0_prime, double gamma);

// exp(t L) applied to ρ through a dense matrix exponential of the N²×N²
// generator. Reference route for the spectral propagator used in evolve.
Matrix propagate_dense(const Superoperator& L, double t, const Matrix& rho);

// Dephasing strength along a path: scalar γ(q) (the main case) or a constant
// PSD matrix γ_ba indexed by spectral level.
class DephasingModel {
public:
    enum class Mode { Scalar, Matrix };
    using RateFn = std::function<double(double)>;

    static DephasingModel scalar(double gamma);
    static DephasingModel scalar(RateFn gamma);
    static DephasingModel matrix(RealMatrix gamma);
    // γ = 0: unitary evolution.
    static DephasingModel none(Eigen::Index dim);

    Mode mode() const noexcept { return mode_; }
    double rate(double q) const;  // scalar mode only
    const RealMatrix& gamma_matrix() const noexcept { return gamma_; }
    // √γ with γ = √γᵀ√γ; rows index the jump operators Γ_j = Σ_a √γ_ja P_a.
    const RealMatrix& jump_factor() const noexcept { return sqrt_gamma_; }

    // Decay-and-phase rates of the blocks P_a ρ P_b:
    // Λ_ab = −i(e_a − e_b) − γ(q)(1 − δ_ab)        (scalar)
    // Λ_ab = −i(e_a − e_b) + 2γ_ba − γ_aa − γ_bb   (matrix)
    Matrix block_rates(const RealVector& eigenvalues, double q) const;

    Superoperator generator(const SpectralFrame& frame) const;
    // Jump operators Γ_j = Σ_a √γ_ja P_a for the frame (matrix mode).
    std::vector<Matrix> jump_operators(const SpectralFrame& frame) const;

    // Smallest coherence decay rate at q, min over a≠b of −Re Λ_ab.
    double min_decay_rate(double q) const;

private:
    Mode mode_ = Mode::Scalar;
    RateFn rate_;
    RealMatrix gamma_;
    RealMatrix sqrt_gamma_;
};

struct EvolveConfig {
    double step_factor = 0.5;      // h ≤ step_factor · ε
    double rtol = 1e-8;            // step doubling stops when final ρ moves less than this
    std::size_t max_steps = std::size_t{1} << 25;
    std::size_t samples = 201;     // stored uniform s-samples, including both ends
    double gap_tol = kDefaultGapTol;
};

struct TrajectorySample {
    double s;
    double q;
    DensityMatrix rho;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double epsilon = 0.0;          // total time 𝒯 = 1/ε
    std::size_t steps = 0;         // steps of the accepted run
    double refinement_change = 0;  // max |ρ_n(1) − ρ_2n(1)| at acceptance
    std::vector<std::string> warnings;

    double total_time() const { return 1.0 / epsilon; }
    const DensityMatrix& final_state() const { return samples.back().rho; }
};

inline constexpr double kTrajectoryTraceTol = 1e-9;
inline constexpr double kTrajectoryHermTol = 1e-9;
inline constexpr double kTrajectoryPosTol = 1e-7;

// Integrates ε ρ̇ = L_{q(s)}(ρ) over s ∈ [0, 1]. Each step of size h applies
// the exact exponential of the generator frozen at the step midpoint,
// exp((h/ε) L_{q(s + h/2)}), evaluated in the instantaneous eigenbasis. The step
// count starts at ⌈1/(step_factor·ε)⌉ and doubles until the final state
// changes by less than rtol. Every stored sample is checked for trace,
// Hermiticity and positivity; violations raise Error(InvalidState).
// Throws Error(StepLimitExceeded) if max_steps is reached first.
Trajectory evolve(const HamiltonianPath& path, const Schedule& schedule, const DephasingModel& deph,
                  double epsilon, const DensityMatrix& rho0, const EvolveConfig& config = {});

// Single run with a fixed step count (no refinement). Exposed for convergence
// studies; `steps` is rounded up to a multiple of samples − 1.
Trajectory evolve_fixed(const HamiltonianPath& path, const Schedule& schedule, const DephasingModel& deph,
                        double epsilon, const DensityMatrix& rho0, std::size_t steps,
                        const EvolveConfig& config = {});

} // namespace adpath
