#include "insulab/sparse.hpp"

#include <cmath>

#include "insulab/errors.hpp"

namespace insulab::sparse {

CgResult cg(const LinearOp& op, std::span<const double> rhs, std::span<double> x,
            std::span<const double> jacobi_diag, const CgOptions& options,
            const Projector& project) {
    const std::size_t n = rhs.size();
    if (x.size() != n || jacobi_diag.size() != n)
        throw domain_error("cg: size mismatch");
    const int max_iter =
        options.max_iter > 0 ? options.max_iter : static_cast<int>(40 * n);

    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_diag[i] = jacobi_diag[i] > 0.0 ? 1.0 / jacobi_diag[i] : 1.0;

    std::vector<double> r(n), z(n), p(n), ap(n);

    op(x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
    if (project) project(r);

    const double rhs_norm = std::sqrt(kernels::dot(rhs, rhs));
    if (rhs_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0, true};
    }

    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = kernels::dot(r, z);

    CgResult res;
    for (int it = 0; it < max_iter; ++it) {
        op(p, ap);
        const double pap = kernels::dot(p, ap);
        if (!(pap > 0.0)) break;  // lost positive-definiteness (projected out)
        const double alpha = rz / pap;
        kernels::axpy(alpha, p, x);
        kernels::axpy(-alpha, ap, r);
        if (project) project(r);
        const double rnorm = std::sqrt(kernels::dot(r, r));
        res.iterations = it + 1;
        res.rel_residual = rnorm / rhs_norm;
        if (res.rel_residual <= options.rel_tol) {
            res.converged = true;
            return res;
        }
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = kernels::dot(r, z);
        kernels::xpby(z, rz_next / rz, p);
        rz = rz_next;
    }
    return res;
}

}  // namespace insulab::sparse
