// charsums.hpp
// Jutila character sums S_m(X,Y), smoothed variants, the smoothed d-sums
// with explicit Euler-product main terms, and the smoothing-function
// toolkit (bump Phi, edge bump Phi_U, custom plateaus, Mellin transforms).
#pragma once

#include <complex>
#include <cstdint>

#include "qdl/arith.hpp"

namespace qdl::charsums {

using cplx = std::complex<double>;

enum class SmoothKind { bump_phi, edge_phi_u, custom_w };

// Compactly supported C-infinity weight: identically 0 outside
// [support_lo, support_hi], identically 1 on [plateau_lo, plateau_hi],
// glued with the exp(-1/t) smoothstep on the two edges.
class SmoothingFunction {
public:
    static SmoothingFunction bump_phi();            // support [1/4,3/2], plateau [1/2,1]
    static SmoothingFunction edge_phi_u(double U);  // support (0,1), plateau (1/U,1-1/U)
    static SmoothingFunction custom_w(double support_lo, double plateau_lo,
                                      double plateau_hi, double support_hi);

    double operator()(double x) const;

    SmoothKind kind() const { return kind_; }
    double support_lo() const { return s0_; }
    double support_hi() const { return s3_; }
    double plateau_lo() const { return s1_; }
    double plateau_hi() const { return s2_; }
    double u_param() const { return u_; }

    unsigned quadrature_nodes = 4096;

private:
    SmoothingFunction(SmoothKind kind, double s0, double s1, double s2, double s3,
                      double u);

    SmoothKind kind_;
    double s0_, s1_, s2_, s3_;
    double u_;
};

// Mellin transform f^(s) = int f(x) x^{s-1} dx: exact plateau plus
// Simpson quadrature on the edges, refined until 1e-10 stability.
// Requires Re(s) >= 1/2 (the guaranteed-decay region).
cplx mellin_hat(const SmoothingFunction& f, cplx s);

// Main-term data for the smoothed d-sum over square-free odd d.
struct MainTermData {
    double archimedean = 0.0;    // f^(1)
    double euler_global = 0.0;   // product over odd p of (1-1/p)(1+A(p)^-k/p)
    double euler_local_n = 1.0;  // product over p|n of (1+A(p)^-k/p)^-1
    int delta_square = 0;        // 1 iff n is a perfect square
    double tail_bound = 0.0;     // recorded truncation tail of the global product
    double X = 0.0;

    double value() const {
        return delta_square * archimedean * (X / 2.0) * euler_global * euler_local_n;
    }
};

// Direct sum over odd square-free d with d/X in supp f of
// A(d)^{-k} chi^(8d)(n) f(d/X). Even n short-circuits to 0.
double smoothed_d_sum(std::uint64_t n, double X, const SmoothingFunction& f,
                      double k_exp, unsigned threads = 0);

// The Euler-product main term of the same sum. The global product is
// accelerated with the zeta(2) pairing so the recorded tail bound meets
// 1e-10 at desk table sizes; insufficient tables are flagged.
MainTermData main_term_d_sum(std::uint64_t n, double X, const SmoothingFunction& f,
                             double k_exp, const arith::PrimeTable& table);

// Exact sum_{n<=Y} chi^(8d)(n); complete periods cancel, so only the
// residual segment is walked (cached period used when available).
double partial_char_sum(const arith::QuadChar& chi, double Y);

// S_m(X,Y) = sum over odd square-free d <= X of |sum_{n<=Y} chi(n)|^{2m},
// d-major with a streaming per-d prefix sum. Refuses X*Y > 1e10 unless
// forced.
double jutila_moment(double X, double Y, double m, bool force = false,
                     unsigned threads = 0);

// Smoothed variant: inner sum weighted by f(n/Y).
double smoothed_jutila_moment(double X, double Y, double m,
                              const SmoothingFunction& f, bool force = false,
                              unsigned threads = 0);

} // namespace qdl::charsums
