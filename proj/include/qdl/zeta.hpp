// zeta.hpp
// Riemann and Hurwitz zeta by Euler-Maclaurin, complex gamma by the
// Lanczos approximation, and the three Mertens-type prime sums.
#pragma once

#include <complex>
#include <cstdint>

#include "qdl/arith.hpp"

namespace qdl::zeta {

using cplx = std::complex<double>;

// Gamma(z) for complex z, Lanczos approximation (g = 607/128, 15 terms),
// reflection formula for Re(z) < 1/2. Target 1e-12 relative for |z| <= 50.
cplx lanczos_gamma(cplx z);

// -------------------------------------------------------------------------
// ZetaEvaluator: fixed Euler-Maclaurin truncation parameters (escape hatch
// via the constructor), no runtime adaptivity. The effective term count
// grows deterministically with |Im s| so accuracy holds along vertical
// lines; identical inputs always produce identical outputs.
// -------------------------------------------------------------------------
class ZetaEvaluator {
public:
    explicit ZetaEvaluator(unsigned euler_maclaurin_terms = 64,
                           unsigned bernoulli_order = 20,
                           double target_rel_error = 1e-12);

    unsigned euler_maclaurin_terms() const { return terms_; }
    unsigned bernoulli_order() const { return bernoulli_order_; }
    double target_rel_error() const { return target_rel_error_; }

    // zeta(s) for Re(s) > -1, s != 1 (pole error within 1e-12 of s = 1).
    cplx riemann(cplx s) const;

    // zeta(s, a) = sum_{n>=0} (n+a)^-s continued, 0 < a <= 1, Re(s) > -1.
    cplx hurwitz(cplx s, double a) const;

    // zeta(s, a) - 1/(s-1): regular at s = 1, evaluated stably near the
    // pole. Used to assemble L-values where character orthogonality
    // cancels the pole term.
    cplx hurwitz_minus_pole(cplx s, double a) const;

private:
    cplx euler_maclaurin(cplx s, double a, bool subtract_pole) const;

    unsigned terms_;
    unsigned bernoulli_order_;
    double target_rel_error_;
};

// exact sum_{p<=x} 1/p (compensated summation)
double prime_sum_reciprocal(double x, const arith::PrimeTable& table);

// exact sum_{p<=x} log(p)/p
double prime_sum_logp(double x, const arith::PrimeTable& table);

// exact sum_{p<=x} cos(alpha log p)/p
double prime_sum_cos(double x, double alpha, const arith::PrimeTable& table);

// companion reference value log|zeta(1 + 1/log x + i alpha)|
double log_abs_zeta_ref(double x, double alpha,
                        const ZetaEvaluator& zeta = ZetaEvaluator());

} // namespace qdl::zeta
