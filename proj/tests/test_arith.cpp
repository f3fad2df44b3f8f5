#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qdl/arith.hpp"
#include "qdl/errors.hpp"

using namespace qdl::arith;

TEST_CASE("jacobi_symbol: pinned examples") {
    CHECK(jacobi_symbol(1, 9) == 1);
    CHECK(jacobi_symbol(2, 3) == -1);   // Euler criterion: 2^1 = -1 mod 3
    CHECK(jacobi_symbol(8, 15) == 1);   // (8/3)(8/5) = (-1)(-1)
    CHECK(jacobi_symbol(0, 3) == 0);
    CHECK(jacobi_symbol(-1, 5) == 1);   // -1 = 4 mod 5, a square
    CHECK_THROWS_AS(jacobi_symbol(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_symbol(3, 0), std::invalid_argument);
}

TEST_CASE("jacobi_symbol agrees with the Legendre-factorization oracle") {
    for (std::uint64_t n = 1; n <= 301; n += 2) {
        for (std::int64_t a = 0; a < (std::int64_t)n; ++a) {
            CAPTURE(a);
            CAPTURE(n);
            REQUIRE(jacobi_symbol(a, n) == oracle::jacobi_by_factorization(a, n));
        }
    }
}

TEST_CASE("quadratic reciprocity over odd coprime m,n <= 999") {
    for (std::uint64_t m = 3; m <= 999; m += 2) {
        for (std::uint64_t n = m + 2; n <= 999; n += 2) {
            if (std::gcd(m, n) != 1) continue;
            int lhs = jacobi_symbol((std::int64_t)m, n) * jacobi_symbol((std::int64_t)n, m);
            int rhs = ((m - 1) / 2 * ((n - 1) / 2)) % 2 == 0 ? 1 : -1;
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("PrimeTable: primes, mobius, omega, lambda") {
    PrimeTable t(2000);

    SUBCASE("prime list is exact") {
        auto& ps = t.primes();
        for (std::size_t i = 1; i < ps.size(); ++i) REQUIRE(ps[i] > ps[i - 1]);
        std::size_t idx = 0;
        for (std::uint64_t n = 2; n <= 2000; ++n) {
            bool prime = true;
            for (std::uint64_t q = 2; q * q <= n; ++q)
                if (n % q == 0) { prime = false; break; }
            if (prime) {
                REQUIRE(idx < ps.size());
                REQUIRE(ps[idx++] == n);
            }
        }
        REQUIRE(idx == ps.size());
    }

    SUBCASE("mobius values and square detection") {
        CHECK(t.mobius(1) == 1);
        CHECK(t.mobius(2) == -1);
        CHECK(t.mobius(6) == 1);
        CHECK(t.mobius(30) == -1);
        for (std::uint64_t n = 1; n <= 2000; ++n) {
            int mu = t.mobius(n);
            REQUIRE(mu >= -1);
            REQUIRE(mu <= 1);
            bool has_sq = false;
            for (std::uint64_t q = 2; q * q <= n; ++q)
                if (n % (q * q) == 0) { has_sq = true; break; }
            REQUIRE((mu == 0) == has_sq);
        }
    }

    SUBCASE("Omega counts prime powers with multiplicity") {
        CHECK(t.omega_big(1) == 0);
        CHECK(t.omega_big(12) == 3);
        CHECK(t.omega_big(1024) == 10);
        CHECK(t.omega_big(30) == 3);
    }

    SUBCASE("sum of Lambda over divisors equals log n") {
        for (std::uint64_t n = 1; n <= 2000; ++n) {
            double s = 0.0;
            for (std::uint64_t d = 1; d <= n; ++d)
                if (n % d == 0) s += t.lambda_vm(d);
            REQUIRE(std::abs(s - std::log((double)n)) < 1e-12 * std::max(1.0, std::log((double)n)) + 1e-12);
        }
    }

    SUBCASE("range errors") {
        CHECK_THROWS_AS(t.mobius(2001), qdl::table_error);
        CHECK_THROWS_AS((void)w_factorial(4001, t), qdl::table_error);
    }
}

TEST_CASE("sieve_squarefree_odd: pinned examples and oracle") {
    CHECK(sieve_squarefree_odd(10) == std::vector<std::uint64_t>{1, 3, 5, 7});
    CHECK(sieve_squarefree_odd(1) == std::vector<std::uint64_t>{1});
    CHECK(sieve_squarefree_odd(15) == std::vector<std::uint64_t>{1, 3, 5, 7, 11, 13, 15});

    auto got = sieve_squarefree_odd(5000);
    auto want = oracle::squarefree_odd_trial(5000);
    REQUIRE(got == want);

    // count identity against mu^2
    PrimeTable t(5000);
    std::size_t count = 0;
    for (std::uint64_t d = 1; d <= 5000; d += 2)
        if (t.mobius(d) != 0) ++count;
    CHECK(got.size() == count);

    // the range variant slices out of the full list
    auto mid = sieve_squarefree_odd_range(1000, 2000);
    for (auto d : mid) {
        REQUIRE(d >= 1000);
        REQUIRE(d <= 2000);
        REQUIRE(is_odd_squarefree(d));
    }
    std::size_t expect = 0;
    for (auto d : want)
        if (d >= 1000 && d <= 2000) ++expect;
    CHECK(mid.size() == expect);
}

TEST_CASE("weight_A") {
    CHECK(weight_A(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(weight_A(3) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(weight_A(15) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(weight_A(9), std::invalid_argument);
    CHECK_THROWS_AS(weight_A(4), std::invalid_argument);
}

TEST_CASE("w_factorial") {
    PrimeTable t(100);
    CHECK(w_factorial(1, t) == 1);
    CHECK(w_factorial(12, t) == 2);
    CHECK(w_factorial(8, t) == 6);
    CHECK(w_factorial(32, t) == 120);
}

TEST_CASE("QuadChar: construction and values") {
    CHECK_THROWS_AS(QuadChar(9), std::invalid_argument);
    CHECK_THROWS_AS(QuadChar(6), std::invalid_argument);
    QuadChar chi(1);
    CHECK(chi(2) == 0);
    CHECK(chi(1) == 1);
    CHECK(chi(3) == -1);
    QuadChar chi105(105);  // 3*5*7, valid
    CHECK(chi105.modulus() == 840);
}

TEST_CASE("QuadChar: complete multiplicativity, periodicity, orthogonality") {
    for (std::uint64_t d : {1ull, 3ull, 5ull, 15ull}) {
        QuadChar chi(d);
        for (std::uint64_t m = 1; m <= 500; ++m) {
            for (std::uint64_t n = m; n <= 500; n += 97) {
                REQUIRE(chi(m * n) == chi(m) * chi(n));
            }
        }
        for (std::uint64_t n = 1; n <= 100; ++n) {
            REQUIRE(chi(n + chi.modulus()) == chi(n));
        }
        long period_sum = 0;
        for (std::uint64_t n = 1; n <= chi.modulus(); ++n) period_sum += chi(n);
        REQUIRE(period_sum == 0);
    }
}

TEST_CASE("QuadChar: period cache matches direct evaluation") {
    QuadChar direct(15), cached(15);
    cached.build_period_cache();
    REQUIRE(cached.has_period_cache());
    for (std::uint64_t n = 1; n <= 500; ++n) REQUIRE(direct(n) == cached(n));
}
