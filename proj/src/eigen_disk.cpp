#include "insulab/eigen_disk.hpp"

#include <cmath>
#include <numbers>

#include "insulab/errors.hpp"
#include "insulab/parallel.hpp"
#include "insulab/quadrature.hpp"
#include "insulab/specfun.hpp"

namespace insulab::eigen {

namespace {

using specfun::bessel_j;
using specfun::bessel_j_prime;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double require_n2(const BallConfig& config, const char* what) {
    if (config.n != 2)
        throw unsupported_dimension_error(
            std::string(what) + ": the eigenvalue second variation is derived "
                                "for n = 2 only");
    return config.radius;
}

}  // namespace

double radial_residual(const BallConfig& config, double m, double lambda) {
    const double n = config.n;
    const double R = config.radius;
    const double z = std::sqrt(lambda) * R;
    const double rp = std::pow(R, 1.0 - n / 2.0);
    return -std::sqrt(lambda) * rp * bessel_j(n / 2.0, z) +
           (config.perimeter / m) * rp * bessel_j(n / 2.0 - 1.0, z);
}

double neumann_mu2(const BallConfig& config) {
    const double nu = config.n / 2.0;
    const auto h = [&](double z) {
        return z * bessel_j_prime(nu, z) - (config.n - 2.0) / 2.0 * bessel_j(nu, z);
    };
    // h ~ z^nu near 0 with positive coefficient; scan for the first sign change.
    const int kScan = 2048;
    const double z_hi = nu + 10.0;
    double prev_z = 1e-6 * z_hi;
    double prev_h = h(prev_z);
    for (int i = 1; i <= kScan; ++i) {
        const double z = prev_z + (z_hi - 1e-6 * z_hi) * (1.0 / kScan);
        const double hz = h(z);
        if (prev_h > 0.0 && hz <= 0.0) {
            const double z_star = specfun::find_root(h, prev_z, z, 1e-13);
            const double ratio = z_star / config.radius;
            return ratio * ratio;
        }
        prev_z = z;
        prev_h = hz;
    }
    throw numerical_error("neumann_mu2: no root located in the scan range");
}

double m0_threshold(const BallConfig& config) {
    const double mu2 = neumann_mu2(config);
    const double m0 = (config.n - 1.0) / config.n * config.perimeter *
                      config.perimeter / config.volume / mu2;
    // Consistency with the limit lambda_m -> mu2 as m -> m0+: the radial
    // transcendental equation must already hold at (mu2, m0).
    const double res = radial_residual(config, m0, mu2);
    const double scale =
        std::abs((config.perimeter / m0) *
                 std::pow(config.radius, 1.0 - config.n / 2.0)) +
        std::sqrt(mu2);
    if (std::abs(res) > 1e-8 * scale)
        throw numerical_error("m0_threshold: identity residual exceeds 1e-8");
    return m0;
}

EigenBallSolution lambda_m(const BallConfig& config, double m) {
    const double mu2 = neumann_mu2(config);
    const double m0 = m0_threshold(config);
    if (!(m > m0))
        throw regime_error(
            "lambda_m: requires m > m0; the m <= m0 regime is handled by the "
            "FEM sign-iteration solver");

    const auto g = [&](double lam) { return radial_residual(config, m, lam); };
    const double eps = 1e-9 * mu2;
    const double lo = eps;
    const double hi = mu2 - eps;
    // The root is unique in (0, mu2); confirm a single sign change on the grid.
    const int kGrid = 64;
    int changes = 0;
    double bracket_lo = lo, bracket_hi = hi;
    double prev = g(lo);
    for (int i = 1; i <= kGrid; ++i) {
        const double lam = lo + (hi - lo) * i / kGrid;
        const double cur = g(lam);
        if ((prev > 0.0) != (cur > 0.0)) {
            ++changes;
            bracket_lo = lo + (hi - lo) * (i - 1.0) / kGrid;
            bracket_hi = lam;
        }
        prev = cur;
    }
    if (changes != 1)
        throw numerical_error("lambda_m: expected exactly one sign change in (0, mu2)");

    EigenBallSolution sol;
    sol.config = config;
    sol.m = m;
    sol.mu2 = mu2;
    sol.lambda = specfun::find_root(g, bracket_lo, bracket_hi, 1e-14 * mu2);
    sol.residual = g(sol.lambda);

    // Normalize int_B u^2 = 1 for u = c r^{1-n/2} J_{n/2-1}(sqrt(l) r):
    // int_B u^2 = c^2 n omega_n int_0^R r J_{n/2-1}(sqrt(l) r)^2 dr.
    const double n = config.n;
    const double R = config.radius;
    const double k = std::sqrt(sol.lambda);
    const double norm2 =
        n * config.omega_n *
        quad::integrate(
            [&](double r) {
                const double j = bessel_j(n / 2.0 - 1.0, k * r);
                return r * j * j;
            },
            0.0, R);
    const double c = 1.0 / std::sqrt(norm2);
    sol.u_R = c * std::pow(R, 1.0 - n / 2.0) * bessel_j(n / 2.0 - 1.0, k * R);
    sol.ur_R = -c * k * std::pow(R, 1.0 - n / 2.0) * bessel_j(n / 2.0, k * R);
    sol.urr_R =
        ((n - 1.0) / R * config.perimeter / m - sol.lambda) * sol.u_R;
    return sol;
}

double fs_factor(const BallConfig& config, double m, int s) {
    require_n2(config, "fs_factor");
    if (s < 1) throw domain_error("fs_factor: s >= 1");
    const EigenBallSolution sol = lambda_m(config, m);
    const double z = std::sqrt(sol.lambda) * config.radius;
    return (m * sol.lambda - kTwoPi) * bessel_j(s, z) /
               (z * bessel_j_prime(s, z)) -
           kTwoPi;
}

EigenModeForm eigen_mode_form(const BallConfig& config, double m, int s) {
    const double R = require_n2(config, "eigen_mode_form");
    if (s < 1) throw domain_error("eigen_mode_form: s >= 1");
    const EigenBallSolution sol = lambda_m(config, m);
    const double z = std::sqrt(sol.lambda) * R;

    EigenModeForm mf;
    mf.s = s;
    mf.f_s = (m * sol.lambda - kTwoPi) * bessel_j(s, z) /
                 (z * bessel_j_prime(s, z)) -
             kTwoPi;
    const double u2 = sol.u_R * sol.u_R;
    // Coefficient of (c_s^2 + d_s^2) for zeta = sum (c_s cos + d_s sin):
    // int zeta^2 = pi R (c_s^2+d_s^2), int |grad zeta|^2 = pi R s^2/R^2 (...).
    mf.q_value = (R / m) * (kTwoPi / m - sol.lambda) * std::numbers::pi * u2 * mf.f_s +
                 (1.0 / m) * (kTwoPi * R * u2) * std::numbers::pi * R *
                     (static_cast<double>(s) * s - 1.0) / (R * R);
    return mf;
}

std::vector<MLambdaRow> mlambda_scan(const BallConfig& config,
                                     const std::vector<double>& m_grid) {
    auto rows = par::parallel_map<MLambdaRow>(m_grid.size(), [&](std::size_t i) {
        const EigenBallSolution sol = lambda_m(config, m_grid[i]);
        return MLambdaRow{m_grid[i], sol.lambda, m_grid[i] * sol.lambda};
    });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].m_lambda > rows[i - 1].m_lambda))
            throw verification_error("mlambda_scan: m lambda_m not strictly increasing");
    return rows;
}

LandauReport landau_check(const std::vector<double>& t_grid,
                          const std::vector<double>& s_grid) {
    if (t_grid.empty() || s_grid.empty())
        throw domain_error("landau_check: grids must be nonempty");
    const double j1p = specfun::j1_prime_first_zero();
    for (double t : t_grid)
        if (!(t > 0.0) || !(t < j1p))
            throw domain_error("landau_check: t must lie in (0, j'_{1,1})");
    for (double s : s_grid)
        if (!(s >= 1.0)) throw domain_error("landau_check: orders must be >= 1");

    LandauReport rep;
    rep.min_decrement = std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        double prev_ratio = 0.0, prev_pair = 0.0;
        bool first = true;
        for (double s : s_grid) {
            const double ratio = bessel_j(s, t) / (t * bessel_j_prime(s, t));
            const double pair = bessel_j(s, t) / bessel_j(s + 1.0, t);
            if (!first) {
                rep.min_decrement = std::min(rep.min_decrement, prev_ratio - ratio);
                if (!(ratio < prev_ratio)) rep.decreasing_in_s = false;
                if (!(pair > prev_pair)) rep.ratio_increasing = false;
            }
            prev_ratio = ratio;
            prev_pair = pair;
            first = false;
        }
    }
    return rep;
}

}  // namespace insulab::eigen
