#include "adpath/simd/kernels.hpp"

#include "adpath/error.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace adpath::simd {

namespace {

struct KernelTable {
    Isa isa;
    void (*matvec)(std::size_t, std::size_t, const cplx*, const cplx*, cplx*);
    void (*matmul)(std::size_t, const cplx*, const cplx*, cplx*);
    void (*hadamard)(std::size_t, const cplx*, cplx*);
};

constexpr KernelTable kScalarTable{Isa::Scalar, &scalar::matvec, &scalar::matmul, &scalar::hadamard};
#if defined(ADPATH_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, &avx2::matvec, &avx2::matmul, &avx2::hadamard};
#endif

const KernelTable* table_for(Isa isa) noexcept {
#if defined(ADPATH_HAVE_AVX2)
    if (isa == Isa::Avx2) return &kAvx2Table;
#endif
    (void)isa;
    return &kScalarTable;
}

bool cpu_has_avx2() noexcept {
#if defined(ADPATH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* initial_table() noexcept {
    const char* env = std::getenv("ADPATH_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalarTable;
    return table_for(detected_isa());
}

std::atomic<const KernelTable*>& active_table() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

} // namespace

std::string_view name(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

Isa detected_isa() noexcept {
    static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    return isa;
}

Isa active_isa() noexcept {
    return active_table().load(std::memory_order_relaxed)->isa;
}

void set_active_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) {
        throw Error(ErrorKind::InvalidArgument, "AVX2 kernels are not available on this CPU/build");
    }
    active_table().store(table_for(isa), std::memory_order_relaxed);
}

void matvec(std::size_t rows, std::size_t cols, const cplx* a, const cplx* x, cplx* y) {
    active_table().load(std::memory_order_relaxed)->matvec(rows, cols, a, x, y);
}

void matmul(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
    active_table().load(std::memory_order_relaxed)->matmul(n, a, b, c);
}

void hadamard(std::size_t len, const cplx* a, cplx* x) {
    active_table().load(std::memory_order_relaxed)->hadamard(len, a, x);
}

} // namespace adpath::simd
