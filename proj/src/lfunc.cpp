// lfunc.cpp
#include "qdl/lfunc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/parallel.hpp"

namespace qdl::lfunc {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

ShiftConfig::ShiftConfig(std::vector<double> a, std::vector<double> t, double sigma_,
                         double Q, double A)
    : a_vec(std::move(a)), t_vec(std::move(t)), sigma(sigma_), cap_Q(Q), cap_A(A) {
    if (a_vec.empty() || a_vec.size() != t_vec.size()) {
        throw std::invalid_argument("ShiftConfig: exponents and shifts must be nonempty, equal length");
    }
    for (double aj : a_vec) {
        if (!(aj > 0.0)) throw std::invalid_argument("ShiftConfig: exponents must be positive");
    }
    if (sigma < 0.5) throw std::invalid_argument("ShiftConfig: sigma must be >= 1/2");
    if (!(cap_Q > 0.0) || !(cap_A > 0.0)) {
        throw std::invalid_argument("ShiftConfig: Q and A must be positive");
    }
    KahanSum s;
    for (double aj : a_vec) s.add(aj);
    a_total = s.value();
}

void ShiftConfig::check_shifts_in_range(double X) const {
    double bound = std::pow(X, cap_A);
    for (double tj : t_vec) {
        if (std::abs(tj) > bound) {
            throw std::invalid_argument("ShiftConfig: shift " + std::to_string(tj) +
                                        " exceeds X^A = " + std::to_string(bound));
        }
    }
}

// ------------------------------------------------------- incomplete gamma

cplx upper_gamma_q(cplx a, double x, cplx inv_gamma_a) {
    if (x < 0.0) throw std::invalid_argument("upper_gamma_q: x must be >= 0");
    if (x == 0.0) return {1.0, 0.0};

    if (x < std::abs(a) + 1.0) {
        // lower series: gamma(a,x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n))
        cplx term = 1.0 / a;
        cplx sum = term;
        for (int n = 1; n < 600; ++n) {
            term *= x / (a + cplx(static_cast<double>(n), 0.0));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) {
                cplx lower = std::exp(a * std::log(x) - x) * sum;
                return 1.0 - lower * inv_gamma_a;
            }
        }
        throw numerical_error("upper_gamma_q: series failed to converge");
    }

    // continued fraction (modified Lentz) for Gamma(a, x)
    const double fpmin = 1e-290;
    cplx b = cplx(x + 1.0, 0.0) - a;
    cplx c = 1.0 / fpmin;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 400; ++i) {
        cplx an = -static_cast<double>(i) * (cplx(static_cast<double>(i), 0.0) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        cplx del = d * c;
        h *= del;
        if (std::abs(del - cplx(1.0, 0.0)) < 1e-16) {
            return std::exp(-x + a * std::log(x)) * h * inv_gamma_a;
        }
    }
    throw numerical_error("upper_gamma_q: continued fraction failed to converge");
}

// ------------------------------------------------------------ L evaluation

LValue l_value_hurwitz(const arith::QuadChar& chi, cplx s,
                       const zeta::ZetaEvaluator& zeta, const LRouteConfig& route) {
    // evaluate in the upper half-plane; conjugate symmetry then holds bitwise
    if (s.imag() < 0.0) {
        LValue v = l_value_hurwitz(chi, std::conj(s), zeta, route);
        v.s = s;
        v.value = std::conj(v.value);
        return v;
    }
    std::uint64_t q = chi.modulus();
    if (static_cast<double>(q) > route.hurwitz_modulus_bound) {
        throw std::invalid_argument(
            "l_value_hurwitz: modulus " + std::to_string(q) +
            " exceeds the exact-route bound; use the afe route");
    }
    // pole term of each Hurwitz zeta cancels by orthogonality, so the
    // subtracted form is used throughout (and makes s=1 regular)
    KahanSum re, im;
    double inv_q = 1.0 / static_cast<double>(q);
    for (std::uint64_t a = 1; a < q; a += 2) {
        int c = chi(a);
        if (c == 0) continue;
        cplx z = zeta.hurwitz_minus_pole(s, static_cast<double>(a) * inv_q);
        re.add(c * z.real());
        im.add(c * z.imag());
    }
    cplx total(re.value(), im.value());
    cplx value = std::exp(-s * std::log(static_cast<double>(q))) * total;

    LValue out;
    out.d = chi.d();
    out.s = s;
    out.value = value;
    out.method = LMethod::hurwitz;
    out.est_abs_error = static_cast<double>(q) * zeta.target_rel_error();
    return out;
}

LValue l_value_afe(const arith::QuadChar& chi, double t,
                   const zeta::ZetaEvaluator& zeta, const LRouteConfig& route) {
    if (t < 0.0) {
        LValue v = l_value_afe(chi, -t, zeta, route);
        v.s = cplx(0.5, t);
        v.value = std::conj(v.value);
        return v;
    }
    const double q = static_cast<double>(chi.modulus());
    const cplx s(0.5, t);
    const cplx a1 = s / 2.0;
    const cplx a2 = (1.0 - s) / 2.0;
    const cplx inv_g1 = 1.0 / zeta::lanczos_gamma(a1);
    const cplx inv_g2 = 1.0 / zeta::lanczos_gamma(a2);

    const auto N = static_cast<std::uint64_t>(
        std::ceil(route.afe_smoothing_C * std::sqrt(q * (t + 1.0))));

    KahanSum s1re, s1im, s2re, s2im;
    for (std::uint64_t n = 1; n <= N; n += 2) {
        int c = chi(n);
        if (c == 0) continue;
        double ln_n = std::log(static_cast<double>(n));
        double x = kPi * static_cast<double>(n) * static_cast<double>(n) / q;
        cplx w1 = upper_gamma_q(a1, x, inv_g1);
        cplx w2 = upper_gamma_q(a2, x, inv_g2);
        cplx t1 = static_cast<double>(c) * std::exp(-s * ln_n) * w1;
        cplx t2 = static_cast<double>(c) * std::exp((s - 1.0) * ln_n) * w2;
        s1re.add(t1.real());
        s1im.add(t1.imag());
        s2re.add(t2.real());
        s2im.add(t2.imag());
    }
    cplx sum1(s1re.value(), s1im.value());
    cplx sum2(s2re.value(), s2im.value());

    // (q/pi)^{(1-2s)/2} * Gamma((1-s)/2) / Gamma(s/2)
    cplx prefac = std::exp(((1.0 - 2.0 * s) / 2.0) * std::log(q / kPi)) *
                  zeta::lanczos_gamma(a2) * inv_g1;

    LValue out;
    out.d = chi.d();
    out.s = s;
    out.value = sum1 + prefac * sum2;
    out.method = LMethod::afe;
    out.est_abs_error = std::exp(-kPi * route.afe_smoothing_C * route.afe_smoothing_C *
                                 (t + 1.0)) +
                        1e-13 * static_cast<double>(N);
    return out;
}

LValue l_value(const arith::QuadChar& chi, cplx s, const zeta::ZetaEvaluator& zeta,
               const LRouteConfig& route) {
    if (s.real() == 0.5 &&
        static_cast<double>(chi.modulus()) > route.afe_crossover_modulus) {
        return l_value_afe(chi, s.imag(), zeta, route);
    }
    return l_value_hurwitz(chi, s, zeta, route);
}

double functional_equation_residual(const arith::QuadChar& chi, cplx s,
                                    const zeta::ZetaEvaluator& zeta,
                                    double eps_floor) {
    const double q = static_cast<double>(chi.modulus());
    auto completed = [&](cplx w) {
        cplx L = l_value_hurwitz(chi, w, zeta).value;
        return std::exp((w / 2.0) * std::log(q / kPi)) * zeta::lanczos_gamma(w / 2.0) * L;
    };
    cplx lam = completed(s);
    cplx lam_ref = completed(1.0 - s);
    double denom = std::max(std::abs(lam), eps_floor);
    return std::abs(lam - lam_ref) / denom;
}

// ------------------------------------------------------------- h and bounds

double h_of_log(double log_n, const ShiftConfig& cfg) {
    double s = 0.0;
    for (std::size_t m = 0; m < cfg.k(); ++m) {
        s += cfg.a_vec[m] * std::cos(cfg.t_vec[m] * log_n);
    }
    return 0.5 * s;
}

double h_of_n(std::uint64_t n, const ShiftConfig& cfg) {
    if (n == 0) throw std::invalid_argument("h_of_n: n must be >= 1");
    return h_of_log(std::log(static_cast<double>(n)), cfg);
}

double log_l_upper_bound(const arith::QuadChar& chi, double sigma, double t,
                         double x, const arith::PrimeTable& table) {
    if (x < 2.0) throw std::invalid_argument("log_l_upper_bound: need x >= 2");
    if (x > static_cast<double>(table.limit())) {
        throw table_error("log_l_upper_bound: x exceeds table limit");
    }
    const double log_x = std::log(x);
    const double expo = 0.5 + std::max(sigma - 0.5, 1.0 / log_x);

    KahanSum sum;
    for (std::uint64_t p : table.primes()) {
        double pd = static_cast<double>(p);
        if (pd > x) break;
        double log_p = std::log(pd);
        // prime powers n = p^k <= x, Lambda(n) = log p
        std::uint64_t n = p;
        for (;;) {
            int c = chi(n);
            if (c != 0) {
                double log_n = std::log(static_cast<double>(n));
                double w = (log_x - log_n) / log_x;
                if (w > 0.0) {
                    sum.add(c * log_p * std::exp(-expo * log_n) *
                            std::cos(t * log_n) / log_n * w);
                }
            }
            if (static_cast<double>(n) > x / pd) break;
            n *= p;
        }
    }
    double log_plus_t = t == 0.0 ? 0.0 : std::max(0.0, std::log(std::abs(t)));
    return sum.value() +
           (std::log(static_cast<double>(chi.modulus())) + log_plus_t) / log_x;
}

double prop25_margin(const arith::QuadChar& chi, const ShiftConfig& cfg, double x,
                     double X, const arith::PrimeTable& table,
                     const zeta::ZetaEvaluator& zeta, const LRouteConfig& route) {
    if (x < 2.0) throw std::invalid_argument("prop25_margin: need x >= 2");
    if (x > static_cast<double>(table.limit())) {
        throw table_error("prop25_margin: x exceeds table limit");
    }
    const double log_x = std::log(x);
    const double m = std::max(cfg.sigma - 0.5, 1.0 / log_x);

    KahanSum rhs;
    const double sqrt_x = std::sqrt(x);
    for (std::uint64_t p : table.primes()) {
        double pd = static_cast<double>(p);
        if (pd > x) break;
        double log_p = std::log(pd);
        int c = chi(p);
        if (c != 0) {
            double w = (log_x - log_p) / log_x;
            rhs.add(2.0 * h_of_log(log_p, cfg) * c * std::exp(-(0.5 + m) * log_p) * w);
        }
        if (pd <= sqrt_x) {
            rhs.add(h_of_log(2.0 * log_p, cfg) * std::exp(-(1.0 + 2.0 * m) * log_p));
        }
    }
    double rhs_total = rhs.value() +
                       (cfg.cap_Q + 1.0) * cfg.a_total * std::log(X) / log_x;

    double logA = std::log(arith::weight_A(chi.d()));
    KahanSum lhs;
    for (std::size_t j = 0; j < cfg.k(); ++j) {
        cplx s(cfg.sigma, cfg.t_vec[j]);
        cplx L = l_value(chi, s, zeta, route).value;
        lhs.add(cfg.a_vec[j] * (logA + std::log(std::abs(L))));
    }
    return rhs_total - lhs.value();
}

} // namespace qdl::lfunc
