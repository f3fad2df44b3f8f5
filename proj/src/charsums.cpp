// charsums.cpp
#include "qdl/charsums.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/parallel.hpp"

namespace qdl::charsums {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kBudget = 1e10;

// C-infinity transition: 0 at t<=0, 1 at t>=1.
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

} // namespace

SmoothingFunction::SmoothingFunction(SmoothKind kind, double s0, double s1, double s2,
                                     double s3, double u)
    : kind_(kind), s0_(s0), s1_(s1), s2_(s2), s3_(s3), u_(u) {
    if (!(s0 < s1 && s1 <= s2 && s2 < s3) || s0 < 0.0) {
        throw std::invalid_argument("SmoothingFunction: need 0 <= lo < plateau <= hi");
    }
}

SmoothingFunction SmoothingFunction::bump_phi() {
    return SmoothingFunction(SmoothKind::bump_phi, 0.25, 0.5, 1.0, 1.5, 0.0);
}

SmoothingFunction SmoothingFunction::edge_phi_u(double U) {
    if (!(U >= 2.0)) throw std::invalid_argument("edge_phi_u: need U >= 2");
    return SmoothingFunction(SmoothKind::edge_phi_u, 0.0, 1.0 / U, 1.0 - 1.0 / U, 1.0, U);
}

SmoothingFunction SmoothingFunction::custom_w(double support_lo, double plateau_lo,
                                              double plateau_hi, double support_hi) {
    return SmoothingFunction(SmoothKind::custom_w, support_lo, plateau_lo, plateau_hi,
                             support_hi, 0.0);
}

double SmoothingFunction::operator()(double x) const {
    if (x <= s0_ || x >= s3_) return 0.0;
    if (x >= s1_ && x <= s2_) return 1.0;
    if (x < s1_) return smoothstep((x - s0_) / (s1_ - s0_));
    return smoothstep((s3_ - x) / (s3_ - s2_));
}

// ----------------------------------------------------------------- Mellin

namespace {

// composite Simpson of f(x) x^{s-1} over [a,b] with n (even) intervals
cplx simpson(const SmoothingFunction& f, cplx s, double a, double b, std::uint64_t n) {
    auto integrand = [&](double x) -> cplx {
        double w = f(x);
        if (w == 0.0) return {0.0, 0.0};
        return w * std::exp((s - 1.0) * std::log(x));
    };
    double h = (b - a) / static_cast<double>(n);
    KahanSum re, im;
    auto acc = [&](cplx v, double coeff) {
        re.add(coeff * v.real());
        im.add(coeff * v.imag());
    };
    acc(integrand(a), 1.0);
    acc(integrand(b), 1.0);
    for (std::uint64_t i = 1; i < n; ++i) {
        acc(integrand(a + h * static_cast<double>(i)), i % 2 == 1 ? 4.0 : 2.0);
    }
    return cplx(re.value(), im.value()) * (h / 3.0);
}

cplx integrate_edge(const SmoothingFunction& f, cplx s, double a, double b,
                    std::uint64_t start_n) {
    if (!(b > a)) return {0.0, 0.0};
    std::uint64_t n = std::max<std::uint64_t>(start_n, 16);
    cplx prev = simpson(f, s, a, b, n);
    for (n *= 2; n <= (1u << 22); n *= 2) {
        cplx cur = simpson(f, s, a, b, n);
        if (std::abs(cur - prev) <= 1e-10) return cur;
        prev = cur;
    }
    throw numerical_error("mellin_hat: edge quadrature did not stabilize to 1e-10");
}

} // namespace

cplx mellin_hat(const SmoothingFunction& f, cplx s) {
    if (s.real() < 0.5) {
        throw std::invalid_argument("mellin_hat: require Re(s) >= 1/2");
    }
    std::uint64_t n0 = std::max<unsigned>(f.quadrature_nodes / 4, 16);
    cplx lo = integrate_edge(f, s, f.support_lo(), f.plateau_lo(), n0);
    cplx hi = integrate_edge(f, s, f.plateau_hi(), f.support_hi(), n0);
    // plateau integral of x^{s-1} in closed form
    cplx plateau = (std::exp(s * std::log(f.plateau_hi())) -
                    std::exp(s * std::log(f.plateau_lo()))) / s;
    return lo + plateau + hi;
}

// ---------------------------------------------------------------- d-sums

double smoothed_d_sum(std::uint64_t n, double X, const SmoothingFunction& f,
                      double k_exp, unsigned threads) {
    if (n == 0) throw std::invalid_argument("smoothed_d_sum: n must be >= 1");
    if (!(X > 0.0)) throw std::invalid_argument("smoothed_d_sum: X must be positive");
    if (k_exp < 0.0) throw std::invalid_argument("smoothed_d_sum: k_exp must be >= 0");
    if (n % 2 == 0) return 0.0;  // chi^(8d)(even) = 0

    auto lo = static_cast<std::uint64_t>(std::floor(f.support_lo() * X)) + 1;
    auto hi = static_cast<std::uint64_t>(std::ceil(f.support_hi() * X));
    if (hi < lo) return 0.0;
    std::vector<std::uint64_t> ds = arith::sieve_squarefree_odd_range(lo, hi);

    return block_reduce(0, ds.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
        KahanSum acc;
        for (std::uint64_t i = b; i < e; ++i) {
            std::uint64_t d = ds[i];
            double w = f(static_cast<double>(d) / X);
            if (w == 0.0) continue;
            int c = n == 1 ? 1
                           : arith::jacobi_symbol(
                                 static_cast<std::int64_t>((8 * d) % n), n);
            if (c == 0) continue;
            double term = c * w;
            if (k_exp != 0.0) term *= std::pow(arith::weight_A(d), -k_exp);
            acc.add(term);
        }
        return acc.value();
    });
}

MainTermData main_term_d_sum(std::uint64_t n, double X, const SmoothingFunction& f,
                             double k_exp, const arith::PrimeTable& table) {
    if (n == 0 || n % 2 == 0) {
        throw std::invalid_argument("main_term_d_sum: n must be odd and positive");
    }
    if (k_exp < 0.0) throw std::invalid_argument("main_term_d_sum: k_exp must be >= 0");

    MainTermData out;
    out.X = X;
    out.archimedean = mellin_hat(f, {1.0, 0.0}).real();

    auto root = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    out.delta_square = (root * root == n) ? 1 : 0;

    // Global product over odd p, accelerated with the zeta(2) pairing:
    //   prod (1-1/p)(1+A(p)^-k/p) = (8/pi^2)^{1-k/2} * prod H_k(p),
    //   H_k(p) = (1-1/p)(1+A(p)^-k/p)(1-p^-2)^{k/2-1} = 1 + O(p^-3),
    // so the truncation tail meets 1e-10 at desk table sizes.
    const double pair_expo = k_exp / 2.0 - 1.0;
    KahanSum log_prod;
    double c3 = 0.0;  // sup of |log H_k(p)| p^3, drives the recorded tail bound
    for (std::uint64_t p : table.primes()) {
        if (p == 2) continue;
        double pd = static_cast<double>(p);
        double Ap = 1.0 - 0.5 / pd;
        double Hk = (1.0 - 1.0 / pd) * (1.0 + std::pow(Ap, -k_exp) / pd) *
                    std::pow(1.0 - 1.0 / (pd * pd), pair_expo);
        double lg = std::log(Hk);
        log_prod.add(lg);
        c3 = std::max(c3, std::abs(lg) * pd * pd * pd);
    }
    double P = static_cast<double>(table.limit());
    out.tail_bound = c3 * 0.5 / (P * P);
    if (out.tail_bound > 1e-10) {
        throw numerical_error("main_term_d_sum: prime table too small, tail bound " +
                              std::to_string(out.tail_bound) + " exceeds 1e-10");
    }
    out.euler_global =
        std::pow(8.0 / (kPi * kPi), 1.0 - k_exp / 2.0) * std::exp(log_prod.value());

    double local = 1.0;
    std::uint64_t rest = n;
    for (std::uint64_t p = 3; p * p <= rest; p += 2) {
        if (rest % p == 0) {
            while (rest % p == 0) rest /= p;
            double Ap = 1.0 - 0.5 / static_cast<double>(p);
            local /= 1.0 + std::pow(Ap, -k_exp) / static_cast<double>(p);
        }
    }
    if (rest > 1) {
        double Ap = 1.0 - 0.5 / static_cast<double>(rest);
        local /= 1.0 + std::pow(Ap, -k_exp) / static_cast<double>(rest);
    }
    out.euler_local_n = local;
    return out;
}

// -------------------------------------------------------- character sums

double partial_char_sum(const arith::QuadChar& chi, double Y) {
    if (Y < 1.0) return 0.0;
    std::uint64_t q = chi.modulus();
    auto cap = static_cast<std::uint64_t>(std::floor(Y));
    std::uint64_t r = cap % q;  // complete periods sum to zero
    long s = 0;
    for (std::uint64_t n = 1; n <= r; n += 2) s += chi(n);
    return static_cast<double>(s);
}

namespace {

// |inner(d)|^{2m} accumulated over a block of the d list
template <typename InnerFn>
double moment_over_block(const std::vector<std::uint64_t>& ds, std::uint64_t b,
                         std::uint64_t e, double m, InnerFn&& inner) {
    KahanSum acc;
    for (std::uint64_t i = b; i < e; ++i) {
        double s = inner(ds[i]);
        if (s == 0.0) continue;
        acc.add(std::pow(s * s, m));
    }
    return acc.value();
}

} // namespace

double jutila_moment(double X, double Y, double m, bool force, unsigned threads) {
    if (!(X >= 1.0) || !(Y >= 1.0)) {
        throw std::invalid_argument("jutila_moment: X and Y must be >= 1");
    }
    if (m < 0.5) throw std::invalid_argument("jutila_moment: m must be >= 1/2");
    if (X * Y > kBudget && !force) {
        throw budget_error("jutila_moment: X*Y exceeds the 1e10 operation budget");
    }
    auto ds = arith::sieve_squarefree_odd(static_cast<std::uint64_t>(std::floor(X)));
    auto cap = static_cast<std::uint64_t>(std::floor(Y));

    return block_reduce(0, ds.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
        return moment_over_block(ds, b, e, m, [&](std::uint64_t d) {
            std::uint64_t q = 8 * d;
            long s = 0;  // streaming prefix over n, integer-exact
            for (std::uint64_t n = 1; n <= cap; n += 2) {
                s += arith::jacobi_symbol(static_cast<std::int64_t>(q % n), n);
            }
            return static_cast<double>(s);
        });
    });
}

double smoothed_jutila_moment(double X, double Y, double m, const SmoothingFunction& f,
                              bool force, unsigned threads) {
    if (!(X >= 1.0) || !(Y > 0.0)) {
        throw std::invalid_argument("smoothed_jutila_moment: X >= 1 and Y > 0 required");
    }
    if (m < 0.5) throw std::invalid_argument("smoothed_jutila_moment: m must be >= 1/2");
    if (X * Y * (f.support_hi() - f.support_lo()) > kBudget && !force) {
        throw budget_error("smoothed_jutila_moment: budget exceeded");
    }
    auto ds = arith::sieve_squarefree_odd(static_cast<std::uint64_t>(std::floor(X)));
    auto n_lo = static_cast<std::uint64_t>(std::floor(f.support_lo() * Y)) + 1;
    auto n_hi = static_cast<std::uint64_t>(std::ceil(f.support_hi() * Y));

    return block_reduce(0, ds.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
        return moment_over_block(ds, b, e, m, [&](std::uint64_t d) {
            std::uint64_t q = 8 * d;
            KahanSum s;
            for (std::uint64_t n = n_lo | 1ull; n <= n_hi; n += 2) {
                double w = f(static_cast<double>(n) / Y);
                if (w == 0.0) continue;
                int c = arith::jacobi_symbol(static_cast<std::int64_t>(q % n), n);
                if (c) s.add(c * w);
            }
            return s.value();
        });
    });
}

} // namespace qdl::charsums
