#include "adpath/random.hpp"

namespace adpath {

HermitianOperator random_hermitian(Eigen::Index dim, FixtureRng& rng) {
    Matrix x(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) x(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    return HermitianOperator(0.5 * (x + x.adjoint()));
}

RealMatrix random_psd(Eigen::Index dim, FixtureRng& rng) {
    RealMatrix a(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = rng.uniform(-1.0, 1.0);
    }
    RealMatrix g = a.transpose() * a / static_cast<double>(dim);
    return 0.5 * (g + g.transpose());
}

DensityMatrix random_density(Eigen::Index dim, FixtureRng& rng) {
    Matrix b(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) b(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    Matrix r = b * b.adjoint();
    r /= r.trace().real();
    return DensityMatrix(0.5 * (r + r.adjoint()));
}

} // namespace adpath
