// kernels_scalar.cpp: reference implementations; the AVX2 variants are tested against these

#include "adpath/simd/kernels.hpp"

namespace adpath::simd::scalar {

namespace {

// y += a * x over len complex entries. Plain real arithmetic: std::complex's
// operator* carries inf/nan recovery branches we do not want in the hot loop.
inline void caxpy(std::size_t len, cplx x, const cplx* a, cplx* y) {
    const double xr = x.real();
    const double xi = x.imag();
    const double* ap = reinterpret_cast<const double*>(a);
    double* yp = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < len; ++i) {
        const double ar = ap[2 * i];
        const double ai = ap[2 * i + 1];
        yp[2 * i] += ar * xr - ai * xi;
        yp[2 * i + 1] += ai * xr + ar * xi;
    }
}

} // namespace

void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = cplx(0.0, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        caxpy(rows, x[j], a + j * rows, y);
    }
}

void matmul(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    for (std::size_t j = 0; j < n; ++j) {
        matvec(n, n, a, b + j * n, c + j * n);
    }
}

void hadamard(std::size_t len, const cplx* a, cplx* x) {
    const double* ap = reinterpret_cast<const double*>(a);
    double* xp = reinterpret_cast<double*>(x);
    for (std::size_t i = 0; i < len; ++i) {
        const double ar = ap[2 * i];
        const double ai = ap[2 * i + 1];
        const double xr = xp[2 * i];
        const double xi = xp[2 * i + 1];
        xp[2 * i] = ar * xr - ai * xi;
        xp[2 * i + 1] = ar * xi + ai * xr;
    }
}

} // namespace adpath::simd::scalar
