// random.hpp: Seeded random fixtures (Hermitian matrices, PSD rate matrices)
//
// Values are derived from raw mt19937_64 output rather than <random>
// distributions, whose algorithms are implementation-defined, so a seed gives
// the same fixture with every standard library.

#pragma once

#include "adpath/types.hpp"

#include <cstdint>
#include <random>

namespace adpath {

class FixtureRng {
public:
    explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

// (X + X†)/2 with entries of X uniform in the unit square of C.
HermitianOperator random_hermitian(Eigen::Index dim, FixtureRng& rng);
// AᵀA/dim with A uniform in [−1, 1]: real symmetric PSD.
RealMatrix random_psd(Eigen::Index dim, FixtureRng& rng);
// Random density matrix B B† / tr(B B†).
DensityMatrix random_density(Eigen::Index dim, FixtureRng& rng);

} // namespace adpath
