// moments.hpp
// Empirical shifted moments over the quadratic family, the corresponding
// envelopes (zeta-factor form, g-function form, and the aggregate-exponent
// form), the exponent table E(m,k,eps), and integral |L| moments.
#pragma once

#include <cstdint>
#include <vector>

#include "qdl/lfunc.hpp"

namespace qdl::moments {

struct MomentReport {
    double X = 0.0;
    lfunc::ShiftConfig cfg;
    double empirical = 0.0;
    double envelope_thm11 = 0.0;
    double envelope_cor12 = 0.0;
    double envelope_lemma26 = 0.0;
    double ratio = 0.0;  // empirical / envelope_cor12
    std::uint64_t family_size = 0;
};

// Piecewise comparison function: log X on [0, 1/log X) and [e^X, inf),
// 1/x on [1/log X, 10], log log x on (10, e^X). Earlier-listed case wins
// at the overlapping endpoints. Requires X > e and x >= 0.
double g_function(double x, double X);

// max(2m^2-m+1, (2m-k)^2/4+2m+1+eps, 2m^2-2mk+3k^2/4+m-3k/4+eps),
// under the hypothesis 2m >= k+1.
double exponent_E(double m, unsigned k, double eps);

// X (log X)^{sum a_j^2/4} times the g-products over shift differences,
// sums and doubles.
double envelope_cor12(const lfunc::ShiftConfig& cfg, double X);

// Same structure with |zeta(1 + i tau + 1/log X)| in place of g(|tau|).
double envelope_thm11(const lfunc::ShiftConfig& cfg, double X,
                      const zeta::ZetaEvaluator& zeta);

// Aggregate envelope X (log X)^{a(a+1)/2}.
double envelope_lemma26(const lfunc::ShiftConfig& cfg, double X);

// Sum over odd square-free d <= X of prod_j |L(1/2+it_j, chi^(8d))|^{a_j},
// with all envelopes attached. Parallel over d, deterministic reduction.
MomentReport shifted_moment_empirical(double X, const lfunc::ShiftConfig& cfg,
                                      const zeta::ZetaEvaluator& zeta,
                                      const lfunc::LRouteConfig& route = {},
                                      unsigned threads = 0);

// |L(1/2+it)| for every odd square-free d <= X and every t in ts;
// vals[i * ts.size() + j] pairs ds[i] with ts[j]. One evaluation per
// (d, t): grid scans over many shift pairs share this.
struct LGrid {
    std::vector<std::uint64_t> ds;
    std::vector<double> ts;
    std::vector<double> vals;

    double at(std::size_t di, std::size_t tj) const { return vals[di * ts.size() + tj]; }
};

LGrid abs_l_grid(double X, const std::vector<double>& ts,
                 const zeta::ZetaEvaluator& zeta,
                 const lfunc::LRouteConfig& route = {}, unsigned threads = 0);

// Assemble the shifted moment from a precomputed grid; every |t_j| of cfg
// must appear in grid.ts. Matches shifted_moment_empirical exactly.
MomentReport moment_from_grid(const LGrid& grid, double X,
                              const lfunc::ShiftConfig& cfg,
                              const zeta::ZetaEvaluator& zeta,
                              unsigned threads = 0);

// Sum over the family of (integral_0^E |L(1/2+it)| dt)^{2m}, composite
// Simpson with step <= quad_step, verified against one refinement;
// disagreement above 1% raises a numerical error.
double integral_abs_moment(double X, double E_lim, double m, double quad_step,
                           const zeta::ZetaEvaluator& zeta,
                           const lfunc::LRouteConfig& route = {},
                           unsigned threads = 0);

} // namespace qdl::moments
