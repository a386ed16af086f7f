// kernels_avx2.cpp: AVX2/FMA variants; this file alone is compiled with -mavx2 -mfma
//
// One __m256d holds two complex doubles [re0, im0, re1, im1]. Complex products
// use the swap + fmaddsub pattern: (ar + i ai)(xr + i xi) =
//   even lanes: ar*xr - ai*xi, odd lanes: ai*xr + ar*xi.

#include "adpath/simd/kernels.hpp"

#include <immintrin.h>

namespace adpath::simd::avx2 {

namespace {

inline void caxpy(std::size_t len, cplx x, const cplx* a, cplx* y) {
    const double* ap = reinterpret_cast<const double*>(a);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d xr = _mm256_set1_pd(x.real());
    const __m256d xi = _mm256_set1_pd(x.imag());
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        const __m256d va = _mm256_loadu_pd(ap + 2 * i);
        const __m256d vs = _mm256_permute_pd(va, 0b0101);
        const __m256d prod = _mm256_fmaddsub_pd(va, xr, _mm256_mul_pd(vs, xi));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
    }
    if (i < len) {
        const double ar = ap[2 * i];
        const double ai = ap[2 * i + 1];
        yp[2 * i] += ar * x.real() - ai * x.imag();
        yp[2 * i + 1] += ai * x.real() + ar * x.imag();
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
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        const __m256d va = _mm256_loadu_pd(ap + 2 * i);
        const __m256d vx = _mm256_loadu_pd(xp + 2 * i);
        const __m256d are = _mm256_movedup_pd(va);
        const __m256d aim = _mm256_permute_pd(va, 0b1111);
        const __m256d xs = _mm256_permute_pd(vx, 0b0101);
        _mm256_storeu_pd(xp + 2 * i, _mm256_fmaddsub_pd(vx, are, _mm256_mul_pd(xs, aim)));
    }
    if (i < len) {
        const double ar = ap[2 * i];
        const double ai = ap[2 * i + 1];
        const double xr = xp[2 * i];
        const double xi = xp[2 * i + 1];
        xp[2 * i] = ar * xr - ai * xi;
        xp[2 * i + 1] = ar * xi + ai * xr;
    }
}

} // namespace adpath::simd::avx2
