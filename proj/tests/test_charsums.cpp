#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdl/charsums.hpp"
#include "qdl/errors.hpp"

using namespace qdl::charsums;
using qdl::arith::PrimeTable;
using qdl::arith::QuadChar;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kZeta2 = kPi * kPi / 6.0;
} // namespace

TEST_CASE("SmoothingFunction: shape invariants") {
    auto phi = SmoothingFunction::bump_phi();
    CHECK(phi.support_lo() == 0.25);
    CHECK(phi.support_hi() == 1.5);
    CHECK(phi.plateau_lo() == 0.5);
    CHECK(phi.plateau_hi() == 1.0);

    auto phi_u = SmoothingFunction::edge_phi_u(8.0);
    CHECK(phi_u.plateau_lo() == doctest::Approx(0.125));
    CHECK_THROWS_AS(SmoothingFunction::edge_phi_u(1.5), std::invalid_argument);

    for (const auto& f : {phi, phi_u, SmoothingFunction::custom_w(1.0, 1.5, 2.0, 2.5)}) {
        for (int i = 0; i <= 400; ++i) {
            double x = f.support_lo() - 0.1 +
                       (f.support_hi() - f.support_lo() + 0.2) * i / 400.0;
            double v = f(x);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
            if (x <= f.support_lo() || x >= f.support_hi()) REQUIRE(v == 0.0);
            if (x >= f.plateau_lo() && x <= f.plateau_hi()) REQUIRE(v == 1.0);
        }
    }

    // monotone rise on the leading edge
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        double v = phi(0.25 + 0.25 * i / 100.0);
        REQUIRE(v >= prev);
        prev = v;
    }
}

TEST_CASE("mellin_hat: plateau integral, bump value, high-frequency decay") {
    // thin-edged indicator of [1,2]: integral = plateau + half of each edge
    auto w = SmoothingFunction::custom_w(0.95, 1.0, 2.0, 2.05);
    double v = mellin_hat(w, {1.0, 0.0}).real();
    CHECK(std::abs(v - 1.0) <= 0.051);

    // bump: each symmetric smoothstep edge integrates to half its width,
    // so f^(1) = 1/2 + (1/4)/2 + (1/2)/2 = 7/8
    auto phi = SmoothingFunction::bump_phi();
    double m1 = mellin_hat(phi, {1.0, 0.0}).real();
    CHECK(m1 == doctest::Approx(0.875).epsilon(1e-9));
    CHECK(m1 >= 0.5);
    CHECK(m1 <= 1.25);

    // repeated integration by parts forces rapid decay in |Im s|
    CHECK(std::abs(mellin_hat(phi, {0.5, 100.0})) <= 1e-4);

    CHECK_THROWS_AS(mellin_hat(phi, {0.3, 0.0}), std::invalid_argument);
}

TEST_CASE("mellin_hat: oscillation beyond the refinement cap is flagged") {
    auto phi = SmoothingFunction::bump_phi();
    CHECK_THROWS_AS(mellin_hat(phi, {0.5, 1e8}), qdl::numerical_error);
}

TEST_CASE("smoothed_d_sum: even n vanishes exactly") {
    auto phi = SmoothingFunction::bump_phi();
    CHECK(smoothed_d_sum(4, 1000.0, phi, 0.0) == 0.0);
    CHECK(smoothed_d_sum(2, 50.0, phi, 1.0) == 0.0);
}

TEST_CASE("smoothed_d_sum vs main term (square n) and cancellation (non-square n)") {
    auto phi = SmoothingFunction::bump_phi();
    PrimeTable table(100000);
    const double X = 1e5;

    double direct1 = smoothed_d_sum(1, X, phi, 0.0);
    MainTermData mt1 = main_term_d_sum(1, X, phi, 0.0, table);
    CHECK(mt1.delta_square == 1);
    CHECK(std::abs(direct1 / mt1.value() - 1.0) <= 0.05);

    double direct3 = smoothed_d_sum(3, X, phi, 0.0);
    CHECK(std::abs(direct3) <= std::pow(X, 0.75));
    MainTermData mt3 = main_term_d_sum(3, X, phi, 0.0, table);
    CHECK(mt3.delta_square == 0);
    CHECK(mt3.value() == 0.0);
}

TEST_CASE("smoothed_d_sum: relative deviation shrinks along the X ladder") {
    auto phi = SmoothingFunction::bump_phi();
    PrimeTable table(100000);
    double prev_dev = -1.0;
    for (double X : {1e4, 1e5, 1e6}) {
        double direct = smoothed_d_sum(1, X, phi, 0.0);
        double main = main_term_d_sum(1, X, phi, 0.0, table).value();
        double dev = std::abs(direct / main - 1.0);
        CAPTURE(X);
        if (prev_dev > 0.0) CHECK(dev <= prev_dev / 2.0);
        prev_dev = dev;
    }
}

TEST_CASE("main_term_d_sum: assembled values and the k=0 product identity") {
    auto phi = SmoothingFunction::bump_phi();
    PrimeTable table(100000);
    const double X = 1e5;

    MainTermData mt1 = main_term_d_sum(1, X, phi, 0.0, table);
    // k=0 pairing makes the global product exactly the odd zeta(2) factor
    CHECK(mt1.euler_global == doctest::Approx(8.0 / (kPi * kPi)).epsilon(1e-8));
    double expected = mt1.archimedean * 2.0 * X / (3.0 * kZeta2);
    CHECK(mt1.value() == doctest::Approx(expected).epsilon(1e-10));

    MainTermData mt9 = main_term_d_sum(9, X, phi, 0.0, table);
    CHECK(mt9.delta_square == 1);
    CHECK(mt9.euler_local_n == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(mt9.value() == doctest::Approx(expected * 0.75).epsilon(1e-10));

    // k > 0 route: tail bound recorded and small at this table size
    MainTermData mtk = main_term_d_sum(1, X, phi, 1.0, table);
    CHECK(mtk.tail_bound <= 1e-10);
    CHECK(mtk.euler_global > 0.0);

    // a tiny table cannot certify the tail
    PrimeTable small(100);
    CHECK_THROWS_AS(main_term_d_sum(1, X, phi, 1.0, small), qdl::numerical_error);

    CHECK_THROWS_AS(main_term_d_sum(4, X, phi, 0.0, table), std::invalid_argument);
}

TEST_CASE("smoothed_d_sum with A(d)^-k tracks its main term") {
    auto phi = SmoothingFunction::bump_phi();
    PrimeTable table(100000);
    const double X = 1e5;
    double direct = smoothed_d_sum(1, X, phi, 1.0);
    double main = main_term_d_sum(1, X, phi, 1.0, table).value();
    CHECK(std::abs(direct / main - 1.0) <= 0.05);
}

TEST_CASE("partial_char_sum: pinned values, periods, Polya-Vinogradov") {
    QuadChar chi1(1);
    CHECK(partial_char_sum(chi1, 1.0) == 1.0);
    CHECK(partial_char_sum(chi1, 8.0) == 0.0);  // 1 - 1 - 1 + 1
    CHECK(partial_char_sum(chi1, 5.0) == -1.0);

    for (std::uint64_t d : {1ull, 3ull, 7ull, 15ull}) {
        QuadChar chi(d);
        double q = static_cast<double>(chi.modulus());
        for (int j = 1; j <= 3; ++j) CHECK(partial_char_sum(chi, q * j) == 0.0);
        for (double Y : {1.0, 7.0, 20.0, 123.0}) {
            CHECK(partial_char_sum(chi, Y + q) == partial_char_sum(chi, Y));
        }
    }

    // Polya-Vinogradov over running prefixes, and cross-check of the
    // period-reduction shortcut against the raw prefix
    for (std::uint64_t d = 1; d <= 2000; d += 2) {
        if (!qdl::arith::is_odd_squarefree(d)) continue;
        QuadChar chi(d);
        std::uint64_t q = chi.modulus();
        double bound = std::sqrt((double)q) * std::log((double)q);
        long prefix = 0;
        long max_abs = 0;
        for (std::uint64_t n = 1; n <= q; ++n) {
            prefix += chi(n);
            max_abs = std::max(max_abs, std::abs(prefix));
            if (n % 997 == 0) {
                REQUIRE(partial_char_sum(chi, (double)n) == (double)prefix);
            }
        }
        CAPTURE(d);
        REQUIRE((double)max_abs <= bound);
    }
}

TEST_CASE("jutila_moment: single-character case and brute-force oracle") {
    // X=1: only d=1 contributes
    for (double Y : {3.0, 8.0, 21.0}) {
        QuadChar chi(1);
        double s = partial_char_sum(chi, Y);
        CHECK(jutila_moment(1.0, Y, 1.0) == doctest::Approx(s * s).epsilon(1e-14));
    }

    // X=10, Y=8, m=1 against an explicit loop over the four characters
    double brute = 0.0;
    for (std::uint64_t d : {1ull, 3ull, 5ull, 7ull}) {
        long s = 0;
        for (std::uint64_t n = 1; n <= 8; n += 2) {
            s += qdl::arith::jacobi_symbol(static_cast<std::int64_t>((8 * d) % n), n);
        }
        brute += static_cast<double>(s * s);
    }
    CHECK(jutila_moment(10.0, 8.0, 1.0) == doctest::Approx(brute).epsilon(1e-14));

    // nondecreasing in X at fixed Y, m
    double prev = 0.0;
    for (double X : {8.0, 16.0, 32.0, 64.0}) {
        double v = jutila_moment(X, 16.0, 1.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("jutila_moment: budget refusal") {
    CHECK_THROWS_AS(jutila_moment(2e5, 1e6, 1.0), qdl::budget_error);
}

TEST_CASE("smoothed_jutila_moment: empty support and brute-force oracle") {
    auto phi = SmoothingFunction::bump_phi();
    CHECK(smoothed_jutila_moment(10.0, 0.5, 1.0, phi) == 0.0);

    double brute = 0.0;
    const double Y = 16.0;
    for (std::uint64_t d : {1ull, 3ull, 5ull, 7ull}) {
        double s = 0.0;
        for (std::uint64_t n = 1; n <= 24; n += 2) {
            double w = phi(static_cast<double>(n) / Y);
            if (w == 0.0) continue;
            s += w * qdl::arith::jacobi_symbol(static_cast<std::int64_t>((8 * d) % n), n);
        }
        brute += s * s;
    }
    CHECK(smoothed_jutila_moment(10.0, Y, 1.0, phi) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("thread count does not change results bitwise") {
    auto phi = SmoothingFunction::bump_phi();
    double a1 = smoothed_d_sum(9, 20000.0, phi, 1.0, 1);
    double a8 = smoothed_d_sum(9, 20000.0, phi, 1.0, 8);
    CHECK(a1 == a8);
    double j1 = jutila_moment(4096.0, 64.0, 1.5, false, 1);
    double j8 = jutila_moment(4096.0, 64.0, 1.5, false, 8);
    CHECK(j1 == j8);
}
