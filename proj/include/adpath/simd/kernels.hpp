// kernels.hpp: Dense complex inner loops used by the propagators
//
// Every kernel has a scalar reference implementation and, on x86-64 builds, an
// AVX2/FMA variant. The variant is picked once at runtime from CPUID; setting
// ADPATH_SIMD=scalar in the environment pins the reference path. All matrices
// are column-major with interleaved (re, im) storage, i.e. std::complex<double>.

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace adpath::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa) noexcept;

// Best ISA this binary can run on this CPU.
Isa detected_isa() noexcept;
Isa active_isa() noexcept;
// Throws Error(InvalidArgument) when the requested ISA is unavailable.
void set_active_isa(Isa isa);

// y = A x, A is rows × cols.
void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y);
// c = a b, all n × n. c must not alias a or b.
void matmul(std::size_t n, const cplx* a, const cplx* b, cplx* c);
// x[i] *= a[i]
void hadamard(std::size_t len, const cplx* a, cplx* x);

namespace scalar {
void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y);
void matmul(std::size_t n, const cplx* a, const cplx* b, cplx* c);
void hadamard(std::size_t len, const cplx* a, cplx* x);
} // namespace scalar

#if defined(ADPATH_HAVE_AVX2)
namespace avx2 {
void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y);
void matmul(std::size_t n, const cplx* a, const cplx* b, cplx* c);
void hadamard(std::size_t len, const cplx* a, cplx* x);
} // namespace avx2
#endif

} // namespace adpath::simd
