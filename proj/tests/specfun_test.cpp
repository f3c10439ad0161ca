#include "insulab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "insulab/errors.hpp"
#include "oracles.hpp"

using insulab::specfun::bessel_j;
using insulab::specfun::bessel_j_prime;
using insulab::specfun::find_root;

namespace {
constexpr double kPi = std::numbers::pi;
// Frozen from the bisection oracle on the 60-term series (and checked against
// it below).
constexpr double kJ0FirstZero = 2.404825557695773;
constexpr double kJ1PrimeFirstZero = 1.841183781340659;
}  // namespace

TEST_CASE("bessel_j at the origin") {
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK(bessel_j(2.5, 0.0) == 0.0);
}

TEST_CASE("bessel_j against the series oracle on [0, 12]") {
    for (double nu : {0.0, 0.5, 1.0, 2.0, 3.7, 8.0}) {
        for (double x : {0.1, 0.7, 2.4, 5.5, 9.0, 11.8}) {
            const double ref = oracles::bessel_series_60(nu, x);
            CHECK(bessel_j(nu, x) == doctest::Approx(ref).epsilon(1e-13));
        }
    }
}

TEST_CASE("first zero of J_0") {
    const double oracle_root = oracles::bisect(
        [](double x) { return oracles::bessel_series_60(0.0, x); }, 2.0, 3.0);
    CHECK(oracle_root == doctest::Approx(kJ0FirstZero).epsilon(1e-12));
    CHECK(std::abs(bessel_j(0.0, kJ0FirstZero)) <= 1e-9);
    const double root =
        find_root([](double x) { return bessel_j(0.0, x); }, 2.0, 3.0, 1e-12);
    CHECK(root == doctest::Approx(kJ0FirstZero).epsilon(1e-10));
}

TEST_CASE("first zero of J_1'") {
    const double oracle_root = oracles::bisect(
        [](double x) {
            return 0.5 * (oracles::bessel_series_60(0.0, x) -
                          oracles::bessel_series_60(2.0, x));
        },
        1.5, 2.5);
    CHECK(oracle_root == doctest::Approx(kJ1PrimeFirstZero).epsilon(1e-12));
    CHECK(std::abs(bessel_j_prime(1.0, kJ1PrimeFirstZero)) <= 1e-9);
    CHECK(insulab::specfun::j1_prime_first_zero() ==
          doctest::Approx(kJ1PrimeFirstZero).epsilon(1e-10));
}

TEST_CASE("J_0' = -J_1") {
    for (double x : {0.5, 1.0, 2.0})
        CHECK(bessel_j_prime(0.0, x) ==
              doctest::Approx(-bessel_j(1.0, x)).epsilon(1e-13));
}

TEST_CASE("bessel_eval bundles value and derivative") {
    const auto e = insulab::specfun::bessel_eval(1.0, 2.0);
    CHECK(e.value == bessel_j(1.0, 2.0));
    CHECK(e.derivative == bessel_j_prime(1.0, 2.0));
    CHECK(e.order == 1.0);
    CHECK(e.argument == 2.0);
}

TEST_CASE("half-integer closed form") {
    for (double x : {0.3, 1.0, 2.0, 5.0, 10.0}) {
        const double closed = std::sqrt(2.0 / (kPi * x)) * std::sin(x);
        CHECK(bessel_j(0.5, x) == doctest::Approx(closed).epsilon(1e-12));
    }
    // d/dx sqrt(2/(pi x)) sin x at pi: sin vanishes there, leaving the cosine
    // term -sqrt(2/pi)/sqrt(pi).
    const double expected = -std::sqrt(2.0) / kPi;
    CHECK(bessel_j_prime(0.5, kPi) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("recurrence and derivative identities on random samples") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> order_dist(0.0, 5.0);
    std::uniform_real_distribution<double> arg_dist(1e-3, 30.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double raw = order_dist(rng);
        const double nu = raw < 1.0 ? raw + 1.0 : raw;  // keep nu-1 >= 0
        const double x = arg_dist(rng);
        const double jm = bessel_j(nu - 1.0, x);
        const double j0 = bessel_j(nu, x);
        const double jp = bessel_j(nu + 1.0, x);
        const double scale =
            std::max({std::abs(jm), std::abs(jp), std::abs(2.0 * nu / x * j0)});
        if (scale < 1e-280) continue;  // all three negligibly small
        CHECK(std::abs(jm + jp - 2.0 * nu / x * j0) <= 1e-10 * scale);
        const double deriv = bessel_j_prime(nu, x);
        const double dscale = std::max({std::abs(jm), std::abs(jp), std::abs(deriv)});
        CHECK(std::abs(deriv - 0.5 * (jm - jp)) <= 1e-10 * std::max(dscale, 1e-280));
    }
}

TEST_CASE("wronskian-style consistency") {
    // J_nu J_{nu+1}' - J_nu' J_{nu+1} + (1/x) J_nu J_{nu+1}
    //   = J_nu^2 + J_{nu+1}^2 - (2 nu / x) J_nu J_{nu+1},
    // obtained by eliminating the derivatives through the recurrences.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> order_dist(0.0, 5.0);
    std::uniform_real_distribution<double> arg_dist(0.05, 30.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double nu = order_dist(rng);
        const double x = arg_dist(rng);
        const double j0 = bessel_j(nu, x);
        const double j1 = bessel_j(nu + 1.0, x);
        const double lhs = j0 * bessel_j_prime(nu + 1.0, x) -
                           bessel_j_prime(nu, x) * j1 + j0 * j1 / x;
        const double rhs = j0 * j0 + j1 * j1 - 2.0 * nu / x * j0 * j1;
        CHECK(std::abs(lhs - rhs) <=
              1e-10 * std::max({std::abs(lhs), std::abs(rhs), 1e-280}));
    }
}

TEST_CASE("reference values beyond the series cutoff") {
    // Frozen from 50-digit arithmetic; exercises the anchored recurrence path.
    struct Ref { double nu, x, value; };
    const Ref table[] = {
        {0, 15, -0.0142244728267807732},
        {0, 27.5, -0.000992228905067405163},
        {0, 50, 0.055812327669251815},
        {1, 18, -0.187994885488069594},
        {1, 42, -0.0459938882218871401},
        {2, 23.7, 0.088349654386011671},
        {0.5, 36, -0.131887505815504961},
        {3.7, 19.3, 0.16214672454431123},
        {8, 47, -0.114161060580743045},
        {12, 14.2, 0.282135430855660187},
        {5, 33, 0.128851158039985111},
    };
    for (const auto& ref : table)
        CHECK(std::abs(bessel_j(ref.nu, ref.x) - ref.value) <= 1e-12);
    // Far range: looser absolute bound, the chains are ~1e7 steps long.
    CHECK(std::abs(bessel_j(0.0, 1000.0) - 0.0247866861524201746) <= 1e-11);
    CHECK(std::abs(bessel_j(2.0, 1000.0) - (-0.0247772295286059955)) <= 1e-11);
    CHECK(std::abs(bessel_j(0.5, 9999.0) - 0.00507549339938105501) <= 1e-9);
}

TEST_CASE("large arguments against the asymptotic oracle") {
    for (double nu : {0.0, 1.0, 2.0}) {
        for (double x : {20.0, 35.0, 50.0}) {
            // Two-term asymptotic: the truncation error is bounded by the
            // third term, |(mu-1)(mu-9)|/(128 x^2) times the amplitude.
            const double mu = 4.0 * nu * nu;
            const double amp = std::sqrt(2.0 / (kPi * x));
            const double bound =
                1.5 * std::abs((mu - 1.0) * (mu - 9.0)) / (128.0 * x * x) * amp +
                1e-9;
            CHECK(std::abs(bessel_j(nu, x) - oracles::bessel_asymptotic(nu, x)) <=
                  bound);
        }
    }
    // Top of the supported range: the recurrence chain must still satisfy the
    // three-term identity with independently anchored evaluations.
    const double x = 1e4;
    const double jm = bessel_j(1.0, x);
    const double j0 = bessel_j(2.0, x);
    const double jp = bessel_j(3.0, x);
    CHECK(std::abs(jm + jp - 4.0 / x * j0) <=
          1e-8 * std::max({std::abs(jm), std::abs(jp), 1e-3}));
    CHECK(std::abs(bessel_j(0.0, x) - oracles::bessel_asymptotic(0.0, x)) <= 1e-8);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_j(-0.5, 1.0), insulab::domain_error);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), insulab::domain_error);
    CHECK_THROWS_AS(bessel_j(1.0, 2e4), insulab::domain_error);
    CHECK_THROWS_AS(bessel_j_prime(0.5, 0.0), insulab::domain_error);
}

TEST_CASE("find_root basics") {
    CHECK(find_root([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const double r1 = find_root([](double x) { return bessel_j_prime(1.0, x); },
                                1.5, 2.5, 1e-12);
    CHECK(r1 == doctest::Approx(kJ1PrimeFirstZero).epsilon(1e-10));

    // Deterministic: bit-identical on repeated calls.
    const auto f = [](double x) { return std::cos(x) - x * 0.3; };
    const double a = find_root(f, 0.0, 3.0, 1e-13);
    const double b = find_root(f, 0.0, 3.0, 1e-13);
    CHECK(a == b);

    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                    insulab::bracket_error);
    CHECK_THROWS_AS(find_root([](double x) { return x > 0.5 ? std::nan("") : -1.0; },
                              0.0, 1.0, 1e-12),
                    insulab::error);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, 1.0, 0.0, 1e-12),
                    insulab::domain_error);
}
