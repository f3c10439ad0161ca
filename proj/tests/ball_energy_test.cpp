#include "insulab/ball_energy.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "insulab/errors.hpp"
#include "insulab/quadrature.hpp"
#include "oracles.hpp"

using namespace insulab;
namespace bl = insulab::ball;

namespace {
constexpr double kPi = std::numbers::pi;

bl::RadialSource random_nonneg_source(std::mt19937_64& rng, int max_degree) {
    std::uniform_real_distribution<double> c(0.0, 2.0);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<double> coeffs(deg(rng) + 1);
    for (auto& v : coeffs) v = c(rng);
    coeffs[0] += 0.05;  // keep f(0) > 0
    return bl::RadialSource{coeffs};
}
}  // namespace

TEST_CASE("ball geometry") {
    const auto b2 = bl::BallConfig::make(2, 1.0);
    CHECK(b2.omega_n == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(b2.perimeter == doctest::Approx(2 * kPi).epsilon(1e-14));
    const auto b3 = bl::BallConfig::make(3, 2.0);
    CHECK(b3.omega_n == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(b3.perimeter * b3.radius == doctest::Approx(3.0 * b3.volume).epsilon(1e-14));
    CHECK_THROWS_AS(bl::BallConfig::make(1, 1.0), domain_error);
    CHECK_THROWS_AS(bl::BallConfig::make(2, -1.0), domain_error);
}

TEST_CASE("source validation") {
    bl::RadialSource zero{{0.0}};
    CHECK_THROWS_AS(zero.validate(1.0, true), validation_error);
    bl::RadialSource dips{{1.0, 0.0, -2.0}};  // f(1) = -1
    CHECK_THROWS_AS(dips.validate(1.0, true), validation_error);
    bl::RadialSource touches{{1.0, 0.0, -1.0}};  // f(1) = 0 is admissible
    CHECK_NOTHROW(touches.validate(1.0, true));
    bl::RadialSource too_long{std::vector<double>(14, 1.0)};
    CHECK_THROWS_AS(too_long.validate(1.0, true), validation_error);
}

TEST_CASE("radial solve closed-form boundary data") {
    const auto cfg = bl::BallConfig::make(2, 1.0);
    const auto sol = bl::solve_radial(cfg, bl::RadialSource{{1.0}}, 1.0);
    CHECK(sol.mean_f == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sol.ur_R == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(sol.u_R == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-13));
    CHECK(sol.urr_R == doctest::Approx(-0.5).epsilon(1e-13));

    CHECK_THROWS_AS(bl::solve_radial(cfg, bl::RadialSource{{0.0}}, 1.0),
                    validation_error);
    CHECK_THROWS_AS(bl::solve_radial(cfg, bl::RadialSource{{1.0}}, 0.0), domain_error);

    const auto cfg3 = bl::BallConfig::make(3, 2.0);
    const auto sol3 = bl::solve_radial(cfg3, bl::RadialSource{{1.0}}, 5.0);
    CHECK(sol3.ur_R == doctest::Approx(-2.0 / 3.0).epsilon(1e-13));
    CHECK(sol3.u_R == doctest::Approx(5.0 / (24.0 * kPi)).epsilon(1e-13));
}

TEST_CASE("boundary data matches exact polynomial integrals on random instances") {
    std::mt19937_64 rng(31415);
    std::uniform_int_distribution<int> ndist(2, 5);
    std::uniform_real_distribution<double> rdist(0.5, 3.0);
    std::uniform_real_distribution<double> mdist(0.1, 10.0);
    for (int t = 0; t < 50; ++t) {
        const int n = ndist(rng);
        const double R = rdist(rng);
        const double m = mdist(rng);
        const auto f = random_nonneg_source(rng, 4);
        const auto cfg = bl::BallConfig::make(n, R);
        const auto sol = bl::solve_radial(cfg, f, m);

        const double fbar = oracles::poly_mean_over_ball(f.coeffs, n, R);
        CHECK(sol.mean_f == doctest::Approx(fbar).epsilon(1e-10));
        CHECK(sol.ur_R == doctest::Approx(-R / n * fbar).epsilon(1e-10));
        CHECK(sol.u_R ==
              doctest::Approx(m * fbar / (n * n * cfg.omega_n * std::pow(R, n - 2)))
                  .epsilon(1e-10));
        CHECK(sol.urr_R ==
              doctest::Approx(-oracles::poly_eval(f.coeffs, R) -
                              (n - 1.0) / R * sol.ur_R)
                  .epsilon(1e-10));
        // Boundary condition: u_r(R) + (1/m) P u(R) = 0.
        CHECK(std::abs(sol.ur_R + cfg.perimeter * sol.u_R / m) <=
              1e-12 * std::abs(sol.ur_R));
        // Compatibility restated: int_boundary u = -m u_r(R).
        CHECK(cfg.perimeter * sol.u_R ==
              doctest::Approx(-m * sol.ur_R).epsilon(1e-10));
    }
}

TEST_CASE("profile positivity and monotonicity") {
    const auto cfg = bl::BallConfig::make(2, 1.0);
    const auto sol = bl::solve_radial(cfg, bl::RadialSource{{2.0, 0.0, -1.0}}, 0.7);
    for (std::size_t i = 0; i < sol.grid_r.size(); ++i) {
        CHECK(sol.grid_u[i] > 0.0);
        CHECK(sol.grid_ur[i] <= 1e-15);
        if (i > 0) CHECK(sol.grid_u[i] <= sol.grid_u[i - 1] + 1e-14);
    }
}

TEST_CASE("flux balance along the radius") {
    // Integral form of the ODE: r^{n-1} u_r(r) |_a^b = - int_a^b f s^{n-1} ds.
    const auto cfg = bl::BallConfig::make(3, 1.5);
    const bl::RadialSource f{{1.0, 0.5, 0.25}};
    const auto sol = bl::solve_radial(cfg, f, 2.0);
    const auto& r = sol.grid_r;
    const int n = cfg.n;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, r.size() - 1);
    for (int t = 0; t < 20; ++t) {
        std::size_t ia = pick(rng), ib = pick(rng);
        if (ia == ib) continue;
        if (ia > ib) std::swap(ia, ib);
        const double lhs = std::pow(r[ib], n - 1) * sol.grid_ur[ib] -
                           std::pow(r[ia], n - 1) * sol.grid_ur[ia];
        const double rhs = -quad::integrate(
            [&](double s) { return f(s) * std::pow(s, n - 1); }, r[ia], r[ib]);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("energy identities") {
    const auto cfg = bl::BallConfig::make(2, 1.0);
    const bl::RadialSource one{{1.0}};
    const auto s1 = bl::solve_radial(cfg, one, 1.0);
    const auto s2 = bl::solve_radial(cfg, one, 2.0);
    const auto s10 = bl::solve_radial(cfg, one, 10.0);
    CHECK(bl::energy_value(s2) < bl::energy_value(s1));
    CHECK(bl::energy_value(s10) < bl::energy_value(s2));

    // Known closed form for f = 1, m = 1, R = 1, n = 2:
    // E = -(1/8 + pi/16).
    CHECK(s1.energy == doctest::Approx(-(0.125 + kPi / 16.0)).epsilon(1e-10));

    // Quadratic scaling in the source.
    const auto sd = bl::solve_radial(cfg, bl::RadialSource{{2.0}}, 1.0);
    CHECK(sd.energy == doctest::Approx(4.0 * s1.energy).epsilon(1e-10));
}

TEST_CASE("optimal distribution") {
    const auto cfg2 = bl::BallConfig::make(2, 1.0);
    const auto sol2 = bl::solve_radial(cfg2, bl::RadialSource{{1.0}}, 3.0);
    CHECK(bl::optimal_distribution(sol2) ==
          doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-13));
    const auto cfg3 = bl::BallConfig::make(3, 1.0);
    const auto sol3 = bl::solve_radial(cfg3, bl::RadialSource{{1.0}}, 1.0);
    CHECK(bl::optimal_distribution(sol3) ==
          doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-13));

    // Sampled-trace form: integrates back to m, rejects vanishing traces.
    std::vector<double> trace = {0.2, -0.1, 0.4, 0.3};
    std::vector<double> w = {0.5, 0.5, 0.5, 0.5};
    const auto h = bl::distribution_from_trace(trace, w, 2.0);
    double total = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) total += w[i] * h[i];
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
    std::vector<double> zeros(4, 0.0);
    CHECK_THROWS_AS(bl::distribution_from_trace(zeros, w, 1.0),
                    degenerate_distribution_error);
}
