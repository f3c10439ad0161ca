#pragma once

// Composite 5-point Gauss-Legendre quadrature on uniform subintervals.
// 256 subintervals of [0, R] is the grid used throughout the radial solvers;
// it integrates the polynomial sources involved here far below test tolerances.

#include <functional>
#include <vector>

namespace insulab::quad {

inline constexpr int kDefaultSubintervals = 256;

struct Rule {
    std::vector<double> nodes;    // ordered, size 5*subintervals
    std::vector<double> weights;  // matching weights

    static Rule composite(double a, double b, int subintervals = kDefaultSubintervals);
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 int subintervals = kDefaultSubintervals);

}  // namespace insulab::quad
