#pragma once

// Bessel functions of the first kind for real order >= 0, their derivatives,
// and deterministic bracketed root finding. Evaluation is dependency-free:
// a truncated power series for x <= 12, and for larger x a downward recurrence
// anchored by the series at a high order where it converges without
// cancellation. Supported argument range is [0, 1e4].

#include <functional>

namespace insulab::specfun {

inline constexpr double kMaxArgument = 1e4;
inline constexpr double kSeriesCutoff = 12.0;

// One evaluation point: J_nu(x) together with J_nu'(x).
struct BesselEval {
    double order = 0.0;
    double argument = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

// J_nu(x) for nu >= 0, 0 <= x <= 1e4. Absolute error <= 1e-12 for x <= 50.
double bessel_j(double order, double x);

// J_nu'(x) = (J_{nu-1}(x) - J_{nu+1}(x))/2; requires x > 0 when order < 1.
double bessel_j_prime(double order, double x);

BesselEval bessel_eval(double order, double x);

// Bracketed root of f on [lo, hi]; bisection/secant hybrid, bit-deterministic.
// Requires f(lo)*f(hi) < 0. Returns a point with bracket width <= tol.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

// First zero of J_1' (= 1.8411837813...), computed once per process; the
// sqrt of the first nonzero Neumann eigenvalue of the unit disk.
double j1_prime_first_zero();

}  // namespace insulab::specfun
