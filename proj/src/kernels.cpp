#include "insulab/kernels.hpp"

#include <cstdlib>

namespace insulab::kernels {

namespace {

struct Ops {
    double (*dot)(std::span<const double>, std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*xpby)(std::span<const double>, double, std::span<double>);
    void (*spmv)(const CsrMatrix&, std::span<const double>, std::span<double>);
    const char* name;
};

constexpr Ops kScalarOps{scalar::dot, scalar::axpy, scalar::xpby, scalar::spmv,
                         "scalar"};

#if defined(INSULAB_HAVE_AVX2)
constexpr Ops kAvx2Ops{avx2::dot, avx2::axpy, avx2::xpby, avx2::spmv, "avx2"};
#endif

const Ops& select_ops() {
#if defined(INSULAB_HAVE_AVX2)
    // INSULATION_LAB_FORCE_SCALAR=1 pins the reference path (used in tests).
    const char* force = std::getenv("INSULATION_LAB_FORCE_SCALAR");
    const bool forced_scalar = force && force[0] == '1';
    if (!forced_scalar && __builtin_cpu_supports("avx2") &&
        __builtin_cpu_supports("fma"))
        return kAvx2Ops;
#endif
    return kScalarOps;
}

const Ops& active() {
    static const Ops& ops = select_ops();
    return ops;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x, y);
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
    active().xpby(x, beta, y);
}

void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y) {
    active().spmv(A, x, y);
}

const char* active_backend() { return active().name; }

}  // namespace insulab::kernels
