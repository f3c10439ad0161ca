#pragma once

// Jacobi-preconditioned conjugate gradients over abstract SPD operators,
// with an optional iterate projector (used for the Neumann-kernel deflation
// and for contact-set masking).

#include <functional>
#include <span>
#include <vector>

#include "insulab/kernels.hpp"

namespace insulab::sparse {

using LinearOp = std::function<void(std::span<const double>, std::span<double>)>;
using Projector = std::function<void(std::span<double>)>;

struct CgOptions {
    double rel_tol = 1e-10;
    int max_iter = 0;  // 0: 40 * n
};

struct CgResult {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

// Solves op(x) = rhs with x as the initial guess. jacobi_diag holds the
// operator diagonal (entries <= 0 are treated as 1). If project is set it is
// applied to the residual every iteration, restricting the solve to the
// projector's range.
CgResult cg(const LinearOp& op, std::span<const double> rhs, std::span<double> x,
            std::span<const double> jacobi_diag, const CgOptions& options = {},
            const Projector& project = nullptr);

}  // namespace insulab::sparse
