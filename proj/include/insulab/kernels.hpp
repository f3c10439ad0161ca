#pragma once

// Double-precision vector kernels used by the quadrature and FEM solvers.
// Scalar reference implementations always exist; an AVX2/FMA variant is
// compiled when the toolchain supports it and selected at runtime via cpuid.
// The two paths are equivalence-tested against each other.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace insulab::kernels {

// Compressed sparse row matrix, square or rectangular, zero-based indices.
struct CsrMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> row_ptr;  // size rows+1
    std::vector<std::int64_t> col_idx;  // size nnz
    std::vector<double> values;         // size nnz

    std::size_t nnz() const { return values.size(); }
};

// Builds a CSR matrix from unsorted (i, j, v) triplets; duplicates are summed.
CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::span<const std::int64_t> is,
                            std::span<const std::int64_t> js,
                            std::span<const double> vs);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);    // y += alpha*x
void xpby(std::span<const double> x, double beta, std::span<double> y);     // y = x + beta*y
void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(INSULAB_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

// Dispatched entry points (resolved once per process).
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y);

// Name of the active backend: "avx2" or "scalar".
const char* active_backend();

}  // namespace insulab::kernels
