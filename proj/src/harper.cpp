// harper.cpp
#include "qdl/harper.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "qdl/errors.hpp"
#include "qdl/parallel.hpp"

namespace qdl::harper {

double HarperSchedule::range_lo(unsigned j) const {
    if (j < 1 || j > J) throw std::invalid_argument("range_lo: j out of [1, J]");
    return std::pow(X, alphas[j - 1]);
}

double HarperSchedule::range_hi(unsigned j) const {
    if (j < 1 || j > J) throw std::invalid_argument("range_hi: j out of [1, J]");
    return std::pow(X, alphas[j]);
}

HarperSchedule build_schedule(double X, unsigned const_M, double const_B) {
    if (const_M < 1) throw std::invalid_argument("build_schedule: M must be >= 1");
    if (const_B < 0.0) throw std::invalid_argument("build_schedule: B must be >= 0");
    double llx = std::log(std::log(X));
    if (!(llx > 1.0)) {
        throw degenerate_schedule_error(
            "build_schedule: need log log X > 1, got log log X = " + std::to_string(llx) +
            " at X = " + std::to_string(X));
    }
    const double threshold = std::pow(10.0, -static_cast<double>(const_M));
    const double denom = llx * llx;

    // max{j : alpha_j <= 10^-M}; alpha_0 = 0 always qualifies, so an empty
    // j >= 1 set gives J = 1
    unsigned max_j = 0;
    for (unsigned j = 1;; ++j) {
        double alpha = std::pow(20.0, j - 1) / denom;
        if (alpha > threshold) break;
        max_j = j;
    }

    HarperSchedule sched;
    sched.X = X;
    sched.const_M = const_M;
    sched.const_B = const_B;
    sched.J = max_j + 1;
    sched.alphas.resize(sched.J + 1);
    sched.ells.resize(sched.J + 1, 0);
    sched.alphas[0] = 0.0;
    for (unsigned j = 1; j <= sched.J; ++j) {
        sched.alphas[j] = std::pow(20.0, j - 1) / denom;
        sched.ells[j] = 2 * static_cast<std::uint64_t>(
                                std::ceil(std::exp(const_B) *
                                          std::pow(sched.alphas[j], -0.75)));
    }
    for (unsigned j = 1; j <= sched.J; ++j) {
        if (sched.alphas[j] <= sched.alphas[j - 1]) {
            throw degenerate_schedule_error("build_schedule: alphas not increasing");
        }
        if (sched.ells[j] < 2 || sched.ells[j] % 2 != 0) {
            throw degenerate_schedule_error("build_schedule: ell_j not even or < 2");
        }
        if (j >= 2 && sched.ells[j] >= sched.ells[j - 1]) {
            throw degenerate_schedule_error("build_schedule: ell_j not strictly decreasing");
        }
    }
    return sched;
}

double truncated_exp(unsigned ell, double x) {
    double r = 1.0;
    for (unsigned j = ell; j >= 1; --j) {
        r = 1.0 + r * x / static_cast<double>(j);
    }
    return r;
}

namespace {

// shared prime-walk for M_{l,j}: exponent m = max(sigma-1/2, 1/log x)
struct RangeParams {
    double lo, hi;      // P_l = (lo, hi]
    double log_x;       // log of X^{alpha_j}
    double m;
};

RangeParams range_params(unsigned l, unsigned j, const lfunc::ShiftConfig& cfg,
                         const HarperSchedule& sched) {
    if (l < 1 || j < l || j > sched.J) {
        throw std::invalid_argument("m_lj: need 1 <= l <= j <= J");
    }
    RangeParams rp;
    rp.lo = sched.range_lo(l);
    rp.hi = sched.range_hi(l);
    rp.log_x = sched.alphas[j] * std::log(sched.X);
    rp.m = std::max(cfg.sigma - 0.5, 1.0 / rp.log_x);
    return rp;
}

} // namespace

double m_lj(const arith::QuadChar& chi, unsigned l, unsigned j,
            const lfunc::ShiftConfig& cfg, const HarperSchedule& sched,
            const arith::PrimeTable& table) {
    RangeParams rp = range_params(l, j, cfg, sched);
    if (rp.hi > static_cast<double>(table.limit())) {
        throw table_error("m_lj: P_" + std::to_string(l) + " reaches " +
                          std::to_string(rp.hi) + ", beyond the prime table");
    }
    KahanSum sum;
    for (std::uint64_t p : table.primes()) {
        double pd = static_cast<double>(p);
        if (pd <= rp.lo) continue;
        if (pd > rp.hi) break;
        int c = chi(p);
        if (c == 0) continue;
        double log_p = std::log(pd);
        double h_p = 2.0 * lfunc::h_of_log(log_p, cfg) /
                     (cfg.a_total * std::exp(rp.m * log_p));
        double s_p = (rp.log_x - log_p) / rp.log_x;
        sum.add(h_p * c * s_p / std::sqrt(pd));
    }
    return sum.value();
}

unsigned classify_d(const arith::QuadChar& chi, const lfunc::ShiftConfig& cfg,
                    const HarperSchedule& sched, const arith::PrimeTable& table) {
    const unsigned J = sched.J;
    const double a = cfg.a_total;
    // |a M_{m,l}| <= ell_m / 10^3 as a predicate matrix for 1 <= m <= l <= J
    std::vector<std::vector<bool>> ok(J + 1, std::vector<bool>(J + 1, true));
    for (unsigned m = 1; m <= J; ++m) {
        for (unsigned l = m; l <= J; ++l) {
            double v = std::abs(a * m_lj(chi, m, l, cfg, sched, table));
            ok[m][l] = v <= static_cast<double>(sched.ells[m]) / 1000.0;
        }
    }
    auto level_ok = [&](unsigned m) {
        for (unsigned l = m; l <= J; ++l)
            if (!ok[m][l]) return false;
        return true;
    };
    if (!level_ok(1)) return 0;
    for (unsigned j = 1; j + 1 <= J; ++j) {
        if (!level_ok(j + 1)) return j;
    }
    return J;
}

double companion_h1_sum(const lfunc::ShiftConfig& cfg, const HarperSchedule& sched,
                        unsigned j, const arith::PrimeTable& table) {
    if (j < 1 || j > sched.J) throw std::invalid_argument("companion_h1_sum: bad j");
    double log_x = sched.alphas[j] * std::log(sched.X);
    double m = std::max(cfg.sigma - 0.5, 1.0 / log_x);
    double cap = std::exp(0.5 * log_x);  // X^{alpha_j / 2}
    if (cap > static_cast<double>(table.limit())) {
        throw table_error("companion_h1_sum: range exceeds the prime table");
    }
    const double a = cfg.a_total;
    KahanSum sum;
    for (std::uint64_t p : table.primes()) {
        double pd = static_cast<double>(p);
        if (pd > cap) break;
        double log_p = std::log(pd);
        // h1(p,sigma,x) = 4 h(p^2) / (a^2 p^{2m})
        double h1 = 4.0 * lfunc::h_of_log(2.0 * log_p, cfg) /
                    (a * a * std::exp(2.0 * m * log_p));
        sum.add(h1 / pd);
    }
    return (a * a / 4.0) * sum.value();
}

PartitionCheck check_prime_partition(const HarperSchedule& sched,
                                     const arith::PrimeTable& table) {
    PartitionCheck out;
    out.pj_reciprocal_sums.assign(sched.J >= 1 ? sched.J - 1 : 0, 0.0);
    for (std::uint64_t p : table.primes()) {
        double pd = static_cast<double>(p);
        if (pd > sched.range_hi(sched.J)) break;
        unsigned hits = 0;
        for (unsigned j = 1; j <= sched.J; ++j) {
            if (pd > sched.range_lo(j) && pd <= sched.range_hi(j)) {
                ++hits;
                if (j == 1) {
                    out.p1_reciprocal_sum += 1.0 / pd;
                } else {
                    out.pj_reciprocal_sums[j - 2] += 1.0 / pd;
                }
            }
        }
        if (hits != 1) out.each_prime_in_one_range = false;
    }
    return out;
}

std::vector<CensusRow> census(const lfunc::ShiftConfig& cfg, const HarperSchedule& sched,
                              const arith::PrimeTable& table, unsigned threads) {
    auto ds = arith::sieve_squarefree_odd(
        static_cast<std::uint64_t>(std::floor(sched.X)));
    const unsigned J = sched.J;

    const std::uint64_t block = kDefaultBlockSize;
    const std::uint64_t n_blocks = (ds.size() + block - 1) / block;
    std::vector<std::vector<std::uint64_t>> counts(n_blocks,
                                                   std::vector<std::uint64_t>(J + 1, 0));

    block_reduce(0, ds.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
        auto& local = counts[b / block];
        for (std::uint64_t i = b; i < e; ++i) {
            arith::QuadChar chi(ds[i]);
            ++local[classify_d(chi, cfg, sched, table)];
        }
        return 0.0;
    }, block);

    std::vector<CensusRow> rows(J + 1);
    for (unsigned j = 0; j <= J; ++j) {
        rows[j].class_j = j;
        for (std::uint64_t b = 0; b < n_blocks; ++b) rows[j].count += counts[b][j];
        rows[j].fraction =
            ds.empty() ? 0.0 : static_cast<double>(rows[j].count) / ds.size();
    }
    return rows;
}

} // namespace qdl::harper
