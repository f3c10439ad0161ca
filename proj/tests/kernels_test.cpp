#include "insulab/kernels.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "insulab/errors.hpp"

namespace k = insulab::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

k::CsrMatrix random_sparse(std::mt19937_64& rng, std::size_t n, int per_row) {
    std::uniform_int_distribution<std::int64_t> col(0, n - 1);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<std::int64_t> is, js;
    std::vector<double> vs;
    for (std::size_t r = 0; r < n; ++r) {
        for (int c = 0; c < per_row; ++c) {
            is.push_back(r);
            js.push_back(col(rng));
            vs.push_back(val(rng));
        }
    }
    return k::csr_from_triplets(n, n, is, js, vs);
}

}  // namespace

TEST_CASE("csr_from_triplets sums duplicates and sorts columns") {
    std::vector<std::int64_t> is = {1, 0, 1, 1};
    std::vector<std::int64_t> js = {2, 0, 2, 0};
    std::vector<double> vs = {1.0, 3.0, 4.0, -1.0};
    const auto A = k::csr_from_triplets(2, 3, is, js, vs);
    CHECK(A.nnz() == 3);
    std::vector<double> x = {1.0, 1.0, 1.0};
    std::vector<double> y(2);
    k::scalar::spmv(A, x, y);
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[1] == doctest::Approx(4.0));  // -1 + (1+4)
    CHECK_THROWS_AS(k::csr_from_triplets(2, 2, is, js, vs), insulab::domain_error);
}

TEST_CASE("scalar and dispatched kernels agree") {
    INFO("active backend: " << k::active_backend());
    std::mt19937_64 rng(4242);
    for (std::size_t n : {1, 3, 7, 8, 9, 31, 64, 67, 1000, 4097}) {
        auto a = random_vector(rng, n);
        auto b = random_vector(rng, n);

        const double d_ref = k::scalar::dot(a, b);
        const double d = k::dot(a, b);
        CHECK(std::abs(d - d_ref) <= 1e-13 * (std::abs(d_ref) + n));

        auto y_ref = b, y = b;
        k::scalar::axpy(0.37, a, y_ref);
        k::axpy(0.37, a, y);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y[i] == doctest::Approx(y_ref[i]).epsilon(1e-14));

        auto z_ref = b, z = b;
        k::scalar::xpby(a, -1.25, z_ref);
        k::xpby(a, -1.25, z);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(z[i] == doctest::Approx(z_ref[i]).epsilon(1e-14));
    }
}

TEST_CASE("spmv equivalence on random sparse matrices") {
    std::mt19937_64 rng(99);
    for (std::size_t n : {5, 33, 256, 1025}) {
        const auto A = random_sparse(rng, n, 7);
        const auto x = random_vector(rng, n);
        std::vector<double> y_ref(n), y(n);
        k::scalar::spmv(A, x, y_ref);
        k::spmv(A, x, y);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y[i] == doctest::Approx(y_ref[i]).epsilon(1e-13));
    }
}

#if defined(INSULAB_HAVE_AVX2)
TEST_CASE("avx2 variants match scalar directly") {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
        MESSAGE("cpu lacks avx2/fma; skipping");
        return;
    }
    std::mt19937_64 rng(1337);
    for (std::size_t n : {2, 15, 16, 17, 129, 2048}) {
        auto a = random_vector(rng, n);
        auto b = random_vector(rng, n);
        CHECK(std::abs(k::avx2::dot(a, b) - k::scalar::dot(a, b)) <=
              1e-13 * (std::abs(k::scalar::dot(a, b)) + n));
        auto y_ref = b, y = b;
        k::scalar::axpy(2.5, a, y_ref);
        k::avx2::axpy(2.5, a, y);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y[i] == doctest::Approx(y_ref[i]).epsilon(1e-14));
        const auto A = random_sparse(rng, n, 5);
        std::vector<double> s1(n), s2(n);
        k::scalar::spmv(A, a, s1);
        k::avx2::spmv(A, a, s2);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(s2[i] == doctest::Approx(s1[i]).epsilon(1e-13));
    }
}
#endif
