// harper.hpp
// The moment-method decomposition: the alpha_j schedule with prime ranges
// P_j, truncated exponentials E_ell, the Dirichlet polynomials M_{l,j}(d),
// and the exceptional-set classification S(0)..S(J) with census.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdl/lfunc.hpp"

namespace qdl::harper {

// Schedule construction cannot proceed (needs log log X > 1); carries the
// offending parameters.
class degenerate_schedule_error : public std::runtime_error {
public:
    explicit degenerate_schedule_error(const std::string& what)
        : std::runtime_error(what) {}
};

// alpha_0 = 0, alpha_j = 20^{j-1}/(log log X)^2;
// J = 1 + max{j : alpha_j <= 10^-M} where alpha_0 always qualifies, so an
// empty j>=1 set yields J = 1 (the workable desk-scale schedule);
// ell_j = 2 ceil(e^B alpha_j^{-3/4}); P_j = (X^{alpha_{j-1}}, X^{alpha_j}].
struct HarperSchedule {
    double X = 0.0;
    unsigned const_M = 1;
    double const_B = 0.0;
    std::vector<double> alphas;       // alphas[j] = alpha_j, j = 0..J
    std::vector<std::uint64_t> ells;  // ells[j] = ell_j, j = 1..J (ells[0] unused)
    unsigned J = 0;

    double range_lo(unsigned j) const;  // X^{alpha_{j-1}}, exclusive
    double range_hi(unsigned j) const;  // X^{alpha_j}, inclusive
};

HarperSchedule build_schedule(double X, unsigned const_M, double const_B);

// E_ell(x) = sum_{j=0}^{ell} x^j/j!, Horner-evaluated.
double truncated_exp(unsigned ell, double x);

// M_{l,j}(d) = sum_{p in P_l} h(p,sigma,X^{alpha_j}) chi(p) s(p,X^{alpha_j}) / sqrt(p)
// with h(p,sigma,x) = 2h(p)/(a p^{max(sigma-1/2,1/log x)}) and
// s(p,x) = log(x/p)/log x. Requires 1 <= l <= j <= J and P_l within the table.
double m_lj(const arith::QuadChar& chi, unsigned l, unsigned j,
            const lfunc::ShiftConfig& cfg, const HarperSchedule& sched,
            const arith::PrimeTable& table);

// Class index in [0, J]: 0 when some |a M_{1,l}| exceeds ell_1/10^3, else
// the first level whose constraint fails, else J. Total on every valid d.
unsigned classify_d(const arith::QuadChar& chi, const lfunc::ShiftConfig& cfg,
                    const HarperSchedule& sched, const arith::PrimeTable& table);

// (a^2/4) sum_{p <= X^{alpha_j/2}} h1(p,sigma,X^{alpha_j})/p, the companion
// prime-square sum of the basic estimate.
double companion_h1_sum(const lfunc::ShiftConfig& cfg, const HarperSchedule& sched,
                        unsigned j, const arith::PrimeTable& table);

// prime-sum diagnostics of the schedule, over the sieved primes
struct PartitionCheck {
    double p1_reciprocal_sum = 0.0;           // sum over P_1 of 1/p
    std::vector<double> pj_reciprocal_sums;   // P_2..P_J (within the table)
    bool each_prime_in_one_range = true;
};

PartitionCheck check_prime_partition(const HarperSchedule& sched,
                                     const arith::PrimeTable& table);

struct CensusRow {
    unsigned class_j = 0;
    std::uint64_t count = 0;
    double fraction = 0.0;
};

// classify every odd square-free d <= X; rows for classes 0..J.
std::vector<CensusRow> census(const lfunc::ShiftConfig& cfg, const HarperSchedule& sched,
                              const arith::PrimeTable& table, unsigned threads = 0);

} // namespace qdl::harper
