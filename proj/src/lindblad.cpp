#include "adpath/lindblad.hpp"

#include "adpath/error.hpp"
#include "adpath/simd/kernels.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace adpath {

namespace {

constexpr cplx kI{0.0, 1.0};

Matrix commutator_super(const Matrix& H) {
    const Eigen::Index n = H.rows();
    const Matrix id = Matrix::Identity(n, n);
    return -kI * (kron(id, H) - kron(H.transpose(), id));
}

void check_frame_size(const SpectralFrame& frame, Eigen::Index n) {
    if (frame.dim() != n) throw Error(ErrorKind::DimensionMismatch, "frame and dephasing matrix differ in size");
}

void validate_psd(const RealMatrix& gamma) {
    if (gamma.rows() != gamma.cols() || gamma.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "gamma must be square and non-empty");
    }
    if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw Error(ErrorKind::NotPSD, "gamma is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (gamma + gamma.transpose()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-12) {
        throw Error(ErrorKind::NotPSD, "gamma has eigenvalue " + std::to_string(es.eigenvalues()(0)));
    }
}

} // namespace

// -------------------------------- Superoperator ------------------------------

Vector vectorize(const Matrix& A) {
    return Eigen::Map<const Vector>(A.data(), A.size());
}

Matrix unvectorize(const Vector& v, Eigen::Index n) {
    if (v.size() != n * n) throw Error(ErrorKind::DimensionMismatch, "vector length is not N^2");
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    return out;
}

Superoperator::Superoperator(Eigen::Index hilbert_dim, Matrix matrix) : n_(hilbert_dim), m_(std::move(matrix)) {
    if (m_.rows() != n_ * n_ || m_.cols() != n_ * n_) {
        throw Error(ErrorKind::DimensionMismatch, "superoperator must be N^2 x N^2");
    }
}

Matrix Superoperator::apply(const Matrix& rho) const {
    if (rho.rows() != n_ || rho.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "operator size mismatch");
    Matrix out(n_, n_);
    const auto nn = static_cast<std::size_t>(n_ * n_);
    simd::matvec(nn, nn, m_.data(), rho.data(), out.data());
    return out;
}

Matrix Superoperator::adjoint_apply(const Matrix& A) const {
    if (A.rows() != n_ || A.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "operator size mismatch");
    // tr(A L(ρ)) = vec(Aᵀ)ᵀ S vec(ρ)  ⇒  vec(L*(A)ᵀ) = Sᵀ vec(Aᵀ)
    const Matrix st = m_.transpose();
    const Matrix at = A.transpose();
    Matrix out(n_, n_);
    const auto nn = static_cast<std::size_t>(n_ * n_);
    simd::matvec(nn, nn, st.data(), at.data(), out.data());
    return out.transpose();
}

double Superoperator::trace_preservation_defect() const {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < m_.cols(); ++k) {
        cplx t{0.0, 0.0};
        for (Eigen::Index i = 0; i < n_; ++i) t += m_(i + n_ * i, k);
        worst = std::max(worst, std::abs(t));
    }
    return worst;
}

// -------------------------------- Generators ---------------------------------

Superoperator lindblad_generator(const HermitianOperator& H, const std::vector<Matrix>& jumps) {
    const Eigen::Index n = H.dim();
    const Matrix id = Matrix::Identity(n, n);
    Matrix S = commutator_super(H.matrix());
    for (const Matrix& G : jumps) {
        if (G.rows() != n || G.cols() != n) throw Error(ErrorKind::DimensionMismatch, "jump operator size mismatch");
        const Matrix GdG = G.adjoint() * G;
        S += 2.0 * kron(G.conjugate(), G) - kron(id, GdG) - kron(GdG.transpose(), id);
    }
    return Superoperator(n, std::move(S));
}

Superoperator general_dephasing_generator(const SpectralFrame& frame, const RealMatrix& gamma) {
    validate_psd(gamma);
    const Eigen::Index n = frame.dim();
    check_frame_size(frame, gamma.rows());
    const Matrix id = Matrix::Identity(n, n);
    Matrix S = commutator_super(frame.reconstruct());
    for (Eigen::Index a = 0; a < n; ++a) {
        const Matrix& Pa = frame.P(static_cast<std::size_t>(a));
        for (Eigen::Index b = 0; b < n; ++b) {
            const double g = gamma(b, a);
            if (g == 0.0) continue;
            // P_a ρ P_b  ↦  P_bᵀ ⊗ P_a
            S += 2.0 * g * kron(frame.P(static_cast<std::size_t>(b)).transpose(), Pa);
        }
        S -= gamma(a, a) * (kron(id, Pa) + kron(Pa.transpose(), id));
    }
    return Superoperator(n, std::move(S));
}

Superoperator dephasing_generator(const SpectralFrame& frame, double gamma) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma = " + std::to_string(gamma));
    const Eigen::Index n = frame.dim();
    Matrix S = commutator_super(frame.reconstruct());
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            if (j == k) continue;
            S -= gamma * kron(frame.P(static_cast<std::size_t>(k)).transpose(), frame.P(static_cast<std::size_t>(j)));
        }
    }
    return Superoperator(n, std::move(S));
}

Matrix adjoint_apply(const Superoperator& L, const Matrix& A) { return L.adjoint_apply(A); }

Matrix witness_X(const SpectralFrame& frame, const HermitianOperator& P0_prime, double gamma) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma = " + std::to_string(gamma));
    if (P0_prime.dim() != frame.dim()) throw Error(ErrorKind::DimensionMismatch, "P0' does not match frame");
    if (frame.dim() > 1 && !(frame.min_gap() > 0.0)) {
        throw Error(ErrorKind::DegenerateSpectrum, "witness requires a simple spectrum");
    }
    const Eigen::Index n = frame.dim();
    const Matrix& D = P0_prime.matrix();
    Matrix X = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            if (a == b) continue;
            const cplx denom = kI * (frame.eigenvalues(a) - frame.eigenvalues(b)) - gamma;
            X += frame.P(static_cast<std::size_t>(a)) * D * frame.P(static_cast<std::size_t>(b)) / denom;
        }
    }
    return X;
}

Matrix propagate_dense(const Superoperator& L, double t, const Matrix& rho) {
    const Matrix E = (t * L.matrix()).exp();
    return unvectorize(E * vectorize(rho), L.hilbert_dim());
}

// ------------------------------- DephasingModel ------------------------------

DephasingModel DephasingModel::scalar(double gamma) {
    if (!(gamma > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma = " + std::to_string(gamma));
    return scalar([gamma](double) { return gamma; });
}

DephasingModel DephasingModel::scalar(RateFn gamma) {
    if (!gamma) throw Error(ErrorKind::InvalidArgument, "empty rate function");
    for (int i = 0; i <= 100; ++i) {
        const double g = gamma(i / 100.0);
        if (!(g > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma(q) <= 0 at q = " + std::to_string(i / 100.0));
    }
    DephasingModel m;
    m.mode_ = Mode::Scalar;
    m.rate_ = std::move(gamma);
    return m;
}

DephasingModel DephasingModel::matrix(RealMatrix gamma) {
    validate_psd(gamma);
    RealMatrix sym = 0.5 * (gamma + gamma.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym);
    const RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    DephasingModel m;
    m.mode_ = Mode::Matrix;
    m.sqrt_gamma_ = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    m.gamma_ = std::move(sym);
    return m;
}

DephasingModel DephasingModel::none(Eigen::Index dim) {
    return matrix(RealMatrix::Zero(dim, dim));
}

double DephasingModel::rate(double q) const {
    if (mode_ != Mode::Scalar) throw Error(ErrorKind::InvalidArgument, "rate(q) requires scalar mode");
    const double g = rate_(q);
    if (!(g > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma(q) <= 0 at q = " + std::to_string(q));
    return g;
}

Matrix DephasingModel::block_rates(const RealVector& e, double q) const {
    const Eigen::Index n = e.size();
    Matrix lam(n, n);
    if (mode_ == Mode::Scalar) {
        const double g = rate(q);
        for (Eigen::Index b = 0; b < n; ++b) {
            for (Eigen::Index a = 0; a < n; ++a) {
                lam(a, b) = cplx(a == b ? 0.0 : -g, -(e(a) - e(b)));
            }
        }
    } else {
        if (gamma_.rows() != n) throw Error(ErrorKind::DimensionMismatch, "dephasing matrix does not match path");
        for (Eigen::Index b = 0; b < n; ++b) {
            for (Eigen::Index a = 0; a < n; ++a) {
                const double re = a == b ? 0.0 : 2.0 * gamma_(b, a) - gamma_(a, a) - gamma_(b, b);
                lam(a, b) = cplx(re, -(e(a) - e(b)));
            }
        }
    }
    return lam;
}

Superoperator DephasingModel::generator(const SpectralFrame& frame) const {
    if (mode_ == Mode::Scalar) return dephasing_generator(frame, rate(frame.q));
    return general_dephasing_generator(frame, gamma_);
}

std::vector<Matrix> DephasingModel::jump_operators(const SpectralFrame& frame) const {
    if (mode_ != Mode::Matrix) throw Error(ErrorKind::InvalidArgument, "jump operators need matrix mode");
    check_frame_size(frame, sqrt_gamma_.cols());
    std::vector<Matrix> jumps;
    for (Eigen::Index j = 0; j < sqrt_gamma_.rows(); ++j) {
        Matrix G = Matrix::Zero(frame.dim(), frame.dim());
        for (Eigen::Index a = 0; a < frame.dim(); ++a) G += sqrt_gamma_(j, a) * frame.P(static_cast<std::size_t>(a));
        jumps.push_back(std::move(G));
    }
    return jumps;
}

double DephasingModel::min_decay_rate(double q) const {
    if (mode_ == Mode::Scalar) return rate(q);
    double worst = std::numeric_limits<double>::infinity();
    const Eigen::Index n = gamma_.rows();
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            if (a != b) worst = std::min(worst, gamma_(a, a) + gamma_(b, b) - 2.0 * gamma_(b, a));
        }
    }
    return n > 1 ? worst : 0.0;
}

// --------------------------------- Integrator --------------------------------

namespace {

struct Stepper {
    const HamiltonianPath& path;
    const Schedule& schedule;
    const DephasingModel& deph;
    double epsilon;
    double gap_tol;

    // scratch
    RealVector e;
    Matrix U, Ud, tmp, rt, F;

    void step(Matrix& rho, double s_mid, double h) {
        const double q = schedule.q(s_mid);
        eigensystem(path.H(q).matrix(), e, U, gap_tol);
        Ud = U.adjoint();
        F = (deph.block_rates(e, q) * (h / epsilon)).array().exp().matrix();
        const auto n = static_cast<std::size_t>(rho.rows());
        tmp.resize(rho.rows(), rho.cols());
        rt.resize(rho.rows(), rho.cols());
        simd::matmul(n, Ud.data(), rho.data(), tmp.data());
        simd::matmul(n, tmp.data(), U.data(), rt.data());
        simd::hadamard(n * n, F.data(), rt.data());
        simd::matmul(n, U.data(), rt.data(), tmp.data());
        simd::matmul(n, tmp.data(), Ud.data(), rho.data());
    }
};

std::size_t round_up(std::size_t n, std::size_t m) { return ((n + m - 1) / m) * m; }

void validate_inputs(const HamiltonianPath& path, const DephasingModel& deph, double epsilon,
                     const DensityMatrix& rho0, const EvolveConfig& config) {
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    if (rho0.dim() != path.dim()) throw Error(ErrorKind::DimensionMismatch, "rho0 does not match path");
    if (deph.mode() == DephasingModel::Mode::Matrix && deph.gamma_matrix().rows() != path.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "dephasing matrix does not match path");
    }
    if (config.samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
    if (!(config.step_factor > 0.0) || !(config.rtol > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "step_factor and rtol must be positive");
    }
}

Trajectory run(const HamiltonianPath& path, const Schedule& schedule, const DephasingModel& deph, double epsilon,
               const DensityMatrix& rho0, std::size_t steps, const EvolveConfig& config) {
    const std::size_t intervals = config.samples - 1;
    steps = round_up(std::max(steps, intervals), intervals);
    const std::size_t per_sample = steps / intervals;
    const double h = 1.0 / static_cast<double>(steps);

    Stepper stepper{path, schedule, deph, epsilon, config.gap_tol, {}, {}, {}, {}, {}, {}};
    Matrix rho = rho0.matrix();

    Trajectory traj;
    traj.epsilon = epsilon;
    traj.steps = steps;
    traj.samples.reserve(config.samples);
    traj.samples.push_back({0.0, schedule.q(0.0), DensityMatrix::unchecked(rho)});
    for (std::size_t k = 0; k < steps; ++k) {
        const double s0 = static_cast<double>(k) * h;
        stepper.step(rho, s0 + 0.5 * h, h);
        if ((k + 1) % per_sample == 0) {
            const double s = (k + 1 == steps) ? 1.0 : static_cast<double>(k + 1) * h;
            traj.samples.push_back({s, schedule.q(s), DensityMatrix::unchecked(rho)});
        }
    }
    return traj;
}

void check_samples(const Trajectory& traj) {
    for (const auto& smp : traj.samples) {
        const double tr = smp.rho.trace_error();
        const double he = smp.rho.hermiticity_error();
        const double me = smp.rho.min_eigenvalue();
        if (!(tr <= kTrajectoryTraceTol) || !(he <= kTrajectoryHermTol) || !(me >= -kTrajectoryPosTol)) {
            std::ostringstream os;
            os << "state at s = " << smp.s << " violates density-matrix invariants (trace error " << tr
               << ", hermiticity " << he << ", min eigenvalue " << me << ")";
            throw Error(ErrorKind::InvalidState, os.str());
        }
    }
}

void regime_warnings(const HamiltonianPath& path, const DephasingModel& deph, double epsilon,
                     std::vector<std::string>& out) {
    double g0 = std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
        const double q = i / 100.0;
        if (path.dim() > 1) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(path.H(q).matrix(), Eigen::EigenvaluesOnly);
            const RealVector& ev = es.eigenvalues();
            for (Eigen::Index a = 0; a + 1 < ev.size(); ++a) g0 = std::min(g0, ev(a + 1) - ev(a));
        }
        gmin = std::min(gmin, deph.min_decay_rate(q));
    }
    double scale = g0;
    if (gmin > 0.0) scale = std::min(scale, gmin);
    if (epsilon > scale / 10.0) {
        std::ostringstream os;
        os << "epsilon = " << epsilon << " is not small against min(gamma, g0) = " << scale
           << "; first-order adiabatic estimates may not apply";
        out.push_back(os.str());
    }
}

} // namespace

Trajectory evolve_fixed(const HamiltonianPath& path, const Schedule& schedule, const DephasingModel& deph,
                        double epsilon, const DensityMatrix& rho0, std::size_t steps, const EvolveConfig& config) {
    validate_inputs(path, deph, epsilon, rho0, config);
    Trajectory t = run(path, schedule, deph, epsilon, rho0, steps, config);
    check_samples(t);
    regime_warnings(path, deph, epsilon, t.warnings);
    return t;
}

Trajectory evolve(const HamiltonianPath& path, const Schedule& schedule, const DephasingModel& deph,
                  double epsilon, const DensityMatrix& rho0, const EvolveConfig& config) {
    validate_inputs(path, deph, epsilon, rho0, config);
    const auto base = static_cast<std::size_t>(std::ceil(1.0 / (config.step_factor * epsilon)));
    std::size_t steps = round_up(std::max(base, config.samples - 1), config.samples - 1);
    if (steps > config.max_steps) {
        throw Error(ErrorKind::StepLimitExceeded, "initial step count exceeds max_steps");
    }
    Trajectory coarse = run(path, schedule, deph, epsilon, rho0, steps, config);
    while (true) {
        if (2 * steps > config.max_steps) {
            throw Error(ErrorKind::StepLimitExceeded,
                        "no convergence to rtol within " + std::to_string(config.max_steps) + " steps");
        }
        steps *= 2;
        Trajectory fine = run(path, schedule, deph, epsilon, rho0, steps, config);
        const double change = (fine.final_state().matrix() - coarse.final_state().matrix()).cwiseAbs().maxCoeff();
        if (change < config.rtol) {
            fine.refinement_change = change;
            check_samples(fine);
            regime_warnings(path, deph, epsilon, fine.warnings);
            return fine;
        }
        coarse = std::move(fine);
    }
}

} // namespace adpath
