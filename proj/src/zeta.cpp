// zeta.cpp
#include "qdl/zeta.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/parallel.hpp"

namespace qdl::zeta {

namespace {

// B_{2k} for k = 1..15.
constexpr double kBernoulli2k[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};
constexpr unsigned kMaxBernoulliK = sizeof(kBernoulli2k) / sizeof(kBernoulli2k[0]);

constexpr double kPi = 3.14159265358979323846264338327950288;

// Lanczos coefficients, g = 607/128, N = 15 (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC[] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// exp(w) - 1 for complex w, stable for small |w|.
cplx expm1_cplx(cplx w) {
    double x = w.real(), y = w.imag();
    double em = std::expm1(x);
    double sy2 = std::sin(0.5 * y);
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    return {em * std::cos(y) - 2.0 * sy2 * sy2, std::exp(x) * std::sin(y)};
}

} // namespace

cplx lanczos_gamma(cplx z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
    }
    cplx acc = kLanczosC[0];
    for (unsigned k = 1; k < 15; ++k) acc += kLanczosC[k] / (z - 1.0 + static_cast<double>(k));
    cplx t = z + (kLanczosG - 0.5);
    return std::sqrt(2.0 * kPi) * std::pow(t, z - 0.5) * std::exp(-t) * acc;
}

ZetaEvaluator::ZetaEvaluator(unsigned euler_maclaurin_terms, unsigned bernoulli_order,
                             double target_rel_error)
    : terms_(euler_maclaurin_terms),
      bernoulli_order_(bernoulli_order),
      target_rel_error_(target_rel_error) {
    if (terms_ < 8) throw std::invalid_argument("ZetaEvaluator: need >= 8 terms");
    if (bernoulli_order_ < 2 || bernoulli_order_ % 2 != 0 ||
        bernoulli_order_ / 2 > kMaxBernoulliK) {
        throw std::invalid_argument("ZetaEvaluator: bernoulli_order must be even, in [2, 30]");
    }
    if (target_rel_error_ <= 0) throw std::invalid_argument("ZetaEvaluator: bad tolerance");
}

cplx ZetaEvaluator::euler_maclaurin(cplx s, double a, bool subtract_pole) const {
    // evaluate in the upper half-plane and reflect, so conjugate symmetry
    // holds bitwise
    if (s.imag() < 0.0) return std::conj(euler_maclaurin(std::conj(s), a, subtract_pole));

    // term count scales with |Im s| so the asymptotic tail stays convergent
    std::uint64_t N = terms_;
    double t = std::abs(s.imag());
    if (t > static_cast<double>(N)) N = static_cast<std::uint64_t>(t) + 8;

    KahanSum re, im;
    for (std::uint64_t n = 0; n < N; ++n) {
        double base = static_cast<double>(n) + a;
        cplx term = std::exp(-s * std::log(base));
        re.add(term.real());
        im.add(term.imag());
    }
    cplx sum(re.value(), im.value());

    double Na = static_cast<double>(N) + a;
    double logNa = std::log(Na);
    cplx Nam_s = std::exp(-s * logNa);  // (N+a)^-s

    cplx tail;
    if (subtract_pole) {
        // (N+a)^{1-s}/(s-1) - 1/(s-1) evaluated via expm1
        tail = expm1_cplx((1.0 - s) * logNa) / (s - 1.0);
    } else {
        tail = std::exp((1.0 - s) * logNa) / (s - 1.0);
    }
    tail += 0.5 * Nam_s;

    // Bernoulli corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * (N+a)^{-s-2k+1}
    unsigned K = bernoulli_order_ / 2;
    cplx poch = s;              // rising product s(s+1)...(s+2k-2)
    double fact = 2.0;          // (2k)!
    double Npow = 1.0 / Na;     // (N+a)^{-(2k-1)}
    for (unsigned k = 1; k <= K; ++k) {
        tail += (kBernoulli2k[k - 1] / fact) * poch * Nam_s * Npow;
        if (k < K) {
            poch *= (s + cplx(2.0 * k - 1.0)) * (s + cplx(2.0 * k));
            fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
            Npow /= Na * Na;
        }
    }
    return sum + tail;
}

cplx ZetaEvaluator::riemann(cplx s) const {
    if (std::abs(s - cplx(1.0, 0.0)) <= 1e-12) {
        throw numerical_error("riemann_zeta: s within 1e-12 of the pole at s=1");
    }
    return euler_maclaurin(s, 1.0, false);
}

cplx ZetaEvaluator::hurwitz(cplx s, double a) const {
    if (!(a > 0.0) || a > 1.0) {
        throw std::invalid_argument("hurwitz_zeta: a must lie in (0, 1]");
    }
    if (std::abs(s - cplx(1.0, 0.0)) <= 1e-12) {
        throw numerical_error("hurwitz_zeta: s within 1e-12 of the pole at s=1");
    }
    return euler_maclaurin(s, a, false);
}

cplx ZetaEvaluator::hurwitz_minus_pole(cplx s, double a) const {
    if (!(a > 0.0) || a > 1.0) {
        throw std::invalid_argument("hurwitz_minus_pole: a must lie in (0, 1]");
    }
    if (s == cplx(1.0, 0.0)) {
        // analytic value at the removed singularity, taken as the midpoint
        // of a tight straddle so everything stays on one code path
        cplx lo = euler_maclaurin(cplx(1.0 - 1e-7, 0.0), a, true);
        cplx hi = euler_maclaurin(cplx(1.0 + 1e-7, 0.0), a, true);
        return 0.5 * (lo + hi);
    }
    return euler_maclaurin(s, a, true);
}

double prime_sum_reciprocal(double x, const arith::PrimeTable& table) {
    if (x > static_cast<double>(table.limit())) {
        throw table_error("prime_sum_reciprocal: x exceeds table limit");
    }
    KahanSum s;
    for (std::uint64_t p : table.primes()) {
        if (static_cast<double>(p) > x) break;
        s.add(1.0 / static_cast<double>(p));
    }
    return s.value();
}

double prime_sum_logp(double x, const arith::PrimeTable& table) {
    if (x > static_cast<double>(table.limit())) {
        throw table_error("prime_sum_logp: x exceeds table limit");
    }
    KahanSum s;
    for (std::uint64_t p : table.primes()) {
        if (static_cast<double>(p) > x) break;
        double pd = static_cast<double>(p);
        s.add(std::log(pd) / pd);
    }
    return s.value();
}

double prime_sum_cos(double x, double alpha, const arith::PrimeTable& table) {
    if (x > static_cast<double>(table.limit())) {
        throw table_error("prime_sum_cos: x exceeds table limit");
    }
    if (alpha < 0) throw std::invalid_argument("prime_sum_cos: alpha must be >= 0");
    KahanSum s;
    for (std::uint64_t p : table.primes()) {
        if (static_cast<double>(p) > x) break;
        double pd = static_cast<double>(p);
        s.add(std::cos(alpha * std::log(pd)) / pd);
    }
    return s.value();
}

double log_abs_zeta_ref(double x, double alpha, const ZetaEvaluator& zeta) {
    if (!(x >= 2.0)) throw std::invalid_argument("log_abs_zeta_ref: need x >= 2");
    cplx s(1.0 + 1.0 / std::log(x), alpha);
    return std::log(std::abs(zeta.riemann(s)));
}

} // namespace qdl::zeta
