#include "insulab/specfun.hpp"

#include <cmath>
#include <limits>

#include "insulab/errors.hpp"

namespace insulab::specfun {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

void check_domain(double order, double x) {
    if (!(order >= 0.0) || !std::isfinite(order))
        throw domain_error("bessel_j: order must be a finite real >= 0");
    if (!(x >= 0.0) || !(x <= kMaxArgument))
        throw domain_error("bessel_j: argument must lie in [0, 1e4]");
}

// Series sum S with J_nu(x) = S * (x/2)^nu / Gamma(nu+1); converges for any x
// but is evaluated only where cancellation is controlled (x <= 12, or
// nu >= (x/2)^2 where terms decrease from the first).
double series_sum(double nu, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 400; ++k) {
        term *= -q / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && (k + 1.0) * (nu + k + 1.0) > q)
            return sum;
    }
    throw numerical_error("bessel_j: series did not converge");
}

// log2 of the series prefactor (x/2)^nu / Gamma(nu+1).
double prefactor_log2(double nu, double x) {
    return (nu * std::log(0.5 * x) - std::lgamma(nu + 1.0)) / kLn2;
}

double series_j(double nu, double x) {
    const double s = series_sum(nu, x);
    const double l2 = prefactor_log2(nu, x);
    if (l2 < -1060.0) return 0.0;  // below double range; J is genuinely tiny
    return s * std::exp2(l2);
}

// Downward three-term recurrence from two series-anchored orders mu+1, mu
// (mu = nu + 2K with mu >= (x/2)^2) to the target order nu. Carried with a
// shared power-of-two exponent because the anchor values underflow double
// range long before the target order is reached.
double anchored_recurrence_j(double nu, double x) {
    const double need = 0.25 * x * x;
    const long K = static_cast<long>(std::ceil(std::max(0.0, (need - nu) / 2.0))) + 1;
    const double mu = nu + 2.0 * K;

    const double s_hi = series_sum(mu + 1.0, x);
    const double s_lo = series_sum(mu, x);
    const double l2_hi = prefactor_log2(mu + 1.0, x);
    const double l2_lo = prefactor_log2(mu, x);

    // Common exponent; mantissas stay within a factor exp2(l2_hi - l2_lo) ~ 2/x.
    long e2 = static_cast<long>(std::floor(l2_lo));
    double j_hi = s_hi * std::exp2(l2_hi - e2);
    double j_lo = s_lo * std::exp2(l2_lo - e2);

    for (double k = mu; k > nu + 0.5; k -= 1.0) {
        const double j_prev = (2.0 * k / x) * j_lo - j_hi;
        j_hi = j_lo;
        j_lo = j_prev;
        if (std::abs(j_lo) > 0x1p512) {
            j_lo = std::ldexp(j_lo, -512);
            j_hi = std::ldexp(j_hi, -512);
            e2 += 512;
        }
    }
    if (e2 < -1060) return 0.0;
    if (e2 > 1020) throw numerical_error("bessel_j: scaled recurrence overflow");
    return std::ldexp(j_lo, static_cast<int>(e2));
}

}  // namespace

double bessel_j(double order, double x) {
    check_domain(order, x);
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    if (x <= kSeriesCutoff || order >= 0.25 * x * x) return series_j(order, x);
    return anchored_recurrence_j(order, x);
}

double bessel_j_prime(double order, double x) {
    check_domain(order, x);
    if (order < 1.0 && x <= 0.0)
        throw domain_error("bessel_j_prime: requires x > 0 when order < 1");
    if (x == 0.0) return order == 1.0 ? 0.5 : 0.0;
    // (J_{nu-1} - J_{nu+1})/2 rewritten via the recurrence so that only
    // orders >= 0 are evaluated.
    return (order / x) * bessel_j(order, x) - bessel_j(order + 1.0, x);
}

BesselEval bessel_eval(double order, double x) {
    return {order, x, bessel_j(order, x), bessel_j_prime(order, x)};
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
    if (!(lo < hi) || !(tol > 0.0))
        throw domain_error("find_root: need lo < hi and tol > 0");
    double flo = f(lo);
    double fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
        throw evaluation_error("find_root: non-finite function value at bracket end");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw bracket_error("find_root: no sign change on [lo, hi]");

    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        double x = std::numeric_limits<double>::quiet_NaN();
        if (it % 2 == 0 && fhi != flo) {
            const double xs = hi - fhi * (hi - lo) / (fhi - flo);
            const double margin = 1e-3 * (hi - lo);
            if (std::isfinite(xs) && xs > lo + margin && xs < hi - margin) x = xs;
        }
        if (!std::isfinite(x)) x = 0.5 * (lo + hi);
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw evaluation_error("find_root: non-finite function value");
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

double j1_prime_first_zero() {
    static const double root = find_root(
        [](double x) { return bessel_j_prime(1.0, x); }, 1.0, 2.5, 1e-14);
    return root;
}

}  // namespace insulab::specfun
