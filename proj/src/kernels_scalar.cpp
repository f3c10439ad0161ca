#include "insulab/kernels.hpp"

#include <algorithm>
#include <numeric>

#include "insulab/errors.hpp"

namespace insulab::kernels {

CsrMatrix csr_from_triplets(std::size_t rows, std::size_t cols,
                            std::span<const std::int64_t> is,
                            std::span<const std::int64_t> js,
                            std::span<const double> vs) {
    if (is.size() != js.size() || is.size() != vs.size())
        throw domain_error("csr_from_triplets: triplet arrays differ in length");
    CsrMatrix A;
    A.rows = rows;
    A.cols = cols;
    A.row_ptr.assign(rows + 1, 0);

    std::vector<std::size_t> order(is.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return is[a] != is[b] ? is[a] < is[b] : js[a] < js[b];
    });

    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto t = order[k];
        if (is[t] < 0 || static_cast<std::size_t>(is[t]) >= rows || js[t] < 0 ||
            static_cast<std::size_t>(js[t]) >= cols)
            throw domain_error("csr_from_triplets: index out of range");
        if (!A.col_idx.empty() && k > 0 && is[order[k - 1]] == is[t] &&
            js[order[k - 1]] == js[t]) {
            A.values.back() += vs[t];
        } else {
            A.col_idx.push_back(js[t]);
            A.values.push_back(vs[t]);
            ++A.row_ptr[is[t] + 1];
        }
    }
    for (std::size_t r = 0; r < rows; ++r) A.row_ptr[r + 1] += A.row_ptr[r];
    return A;
}

namespace scalar {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + beta * y[i];
}

void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y) {
    for (std::size_t r = 0; r < A.rows; ++r) {
        double s = 0.0;
        for (std::int64_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
            s += A.values[k] * x[A.col_idx[k]];
        y[r] = s;
    }
}

}  // namespace scalar
}  // namespace insulab::kernels
