// lfunc.hpp
// L(s, chi^(8d)) on and near the critical line. Two evaluation routes:
// an exact Hurwitz-zeta decomposition (cost ~ 8d zeta calls, used for
// validation and small moduli) and a smoothed approximate-functional-
// equation path for batch scans at s = 1/2 + it. Also the conditional
// log-L upper-bound machinery built from prime sums.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qdl/arith.hpp"
#include "qdl/zeta.hpp"

namespace qdl::lfunc {

using cplx = std::complex<double>;

// Shift/exponent tuple (k, a_vec, t_vec, sigma, Q, A). a_total is fixed at
// construction and equals the sum of a_vec.
struct ShiftConfig {
    std::vector<double> a_vec;
    std::vector<double> t_vec;
    double sigma = 0.5;
    double cap_Q = 1.0;
    double cap_A = 1.0;
    double a_total = 0.0;

    ShiftConfig() = default;
    ShiftConfig(std::vector<double> a, std::vector<double> t, double sigma_ = 0.5,
                double Q = 1.0, double A = 1.0);

    std::size_t k() const { return a_vec.size(); }

    // |t_j| <= X^cap_A, checked at use sites against the active X.
    void check_shifts_in_range(double X) const;
};

enum class LMethod { hurwitz, afe };

struct LValue {
    std::uint64_t d = 0;
    cplx s;
    cplx value;
    LMethod method = LMethod::hurwitz;
    double est_abs_error = 0.0;
};

struct LRouteConfig {
    double hurwitz_modulus_bound = 2e5;  // exact route refuses 8d above this
    double afe_crossover_modulus = 5000; // router: below this prefer hurwitz
    double afe_smoothing_C = 3.0;        // terms up to C*sqrt(8d(|t|+1))
};

// Normalized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a) for
// complex a and real x >= 0; caller supplies 1/Gamma(a). Series for small
// x, continued fraction otherwise.
cplx upper_gamma_q(cplx a, double x, cplx inv_gamma_a);

// Exact route: (8d)^-s sum_a chi(a) zeta(s, a/8d), pole-subtracted so s=1
// is allowed (orthogonality cancels the pole). Throws when 8d exceeds the
// route bound.
LValue l_value_hurwitz(const arith::QuadChar& chi, cplx s,
                       const zeta::ZetaEvaluator& zeta,
                       const LRouteConfig& route = LRouteConfig());

// Smoothed approximate functional equation at s = 1/2 + it (even real
// primitive character, root number +1).
LValue l_value_afe(const arith::QuadChar& chi, double t,
                   const zeta::ZetaEvaluator& zeta,
                   const LRouteConfig& route = LRouteConfig());

// Route selector: AFE on the critical line above the crossover modulus,
// Hurwitz otherwise.
LValue l_value(const arith::QuadChar& chi, cplx s, const zeta::ZetaEvaluator& zeta,
               const LRouteConfig& route = LRouteConfig());

// |Lambda(s) - Lambda(1-s)| / max(|Lambda(s)|, floor) with
// Lambda(s) = (8d/pi)^(s/2) Gamma(s/2) L(s, chi^(8d)), both sides through
// the Hurwitz route.
double functional_equation_residual(const arith::QuadChar& chi, cplx s,
                                    const zeta::ZetaEvaluator& zeta,
                                    double eps_floor = 1e-300);

// h(n) = (1/2) Re sum_m a_m n^{-i t_m} = (1/2) sum_m a_m cos(t_m log n)
double h_of_log(double log_n, const ShiftConfig& cfg);
double h_of_n(std::uint64_t n, const ShiftConfig& cfg);

// Explicit part of the conditional upper bound for log|L(sigma+it, chi)|:
// prime-power sum with weight log(x/n)/log x plus (log 8d + log+ t)/log x.
// The O(1/log x) term is excluded. log+ t = max(0, log|t|), log+ 0 = 0.
double log_l_upper_bound(const arith::QuadChar& chi, double sigma, double t,
                         double x, const arith::PrimeTable& table);

// RHS_explicit - LHS for the aggregated bound on
// sum_m a_m log|A(d) L(sigma+it_m, chi^(8d))|; X is the family scale
// entering through (Q+1) a log X / log x. O(1) excluded.
double prop25_margin(const arith::QuadChar& chi, const ShiftConfig& cfg, double x,
                     double X, const arith::PrimeTable& table,
                     const zeta::ZetaEvaluator& zeta,
                     const LRouteConfig& route = LRouteConfig());

} // namespace qdl::lfunc
