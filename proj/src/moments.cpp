// moments.cpp
#include "qdl/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/parallel.hpp"

namespace qdl::moments {

namespace {
constexpr double kE = 2.71828182845904523536;

// distinct |t| values of a config, with per-shift lookup indices
struct ShiftDedup {
    std::vector<double> ts;          // distinct values of |t_j|
    std::vector<std::size_t> index;  // index[j] locates |t_j| in ts
};

ShiftDedup dedupe_shifts(const lfunc::ShiftConfig& cfg) {
    ShiftDedup out;
    out.index.resize(cfg.k());
    for (std::size_t j = 0; j < cfg.k(); ++j) {
        double t = std::abs(cfg.t_vec[j]);
        auto it = std::find(out.ts.begin(), out.ts.end(), t);
        if (it == out.ts.end()) {
            out.index[j] = out.ts.size();
            out.ts.push_back(t);
        } else {
            out.index[j] = static_cast<std::size_t>(it - out.ts.begin());
        }
    }
    return out;
}

double product_for_d(const std::vector<double>& abs_l, const ShiftDedup& dd,
                     const lfunc::ShiftConfig& cfg) {
    double prod = 1.0;
    for (std::size_t j = 0; j < cfg.k(); ++j) {
        prod *= std::pow(abs_l[dd.index[j]], cfg.a_vec[j]);
    }
    return prod;
}

void attach_envelopes(MomentReport& r, const zeta::ZetaEvaluator& zeta) {
    if (r.X <= kE) return;  // envelopes need log X > 1; tiny-family runs skip them
    r.envelope_thm11 = envelope_thm11(r.cfg, r.X, zeta);
    r.envelope_cor12 = envelope_cor12(r.cfg, r.X);
    r.envelope_lemma26 = envelope_lemma26(r.cfg, r.X);
    r.ratio = r.empirical / r.envelope_cor12;
}

} // namespace

double g_function(double x, double X) {
    if (x < 0.0) throw std::invalid_argument("g_function: x must be >= 0");
    if (!(X > kE)) throw std::invalid_argument("g_function: need X > e");
    double log_X = std::log(X);
    if (x < 1.0 / log_X) return log_X;
    if (x <= 10.0) return 1.0 / x;
    if (x < std::exp(X)) return std::log(std::log(x));  // exp overflows to inf for large X
    return log_X;
}

double exponent_E(double m, unsigned k, double eps) {
    if (k == 0) throw std::invalid_argument("exponent_E: k must be a positive integer");
    if (!(eps > 0.0)) throw std::invalid_argument("exponent_E: eps must be positive");
    double kd = static_cast<double>(k);
    if (2.0 * m < kd + 1.0) {
        throw std::invalid_argument("exponent_E: hypothesis 2m >= k+1 violated (m=" +
                                    std::to_string(m) + ", k=" + std::to_string(k) + ")");
    }
    double b1 = 2.0 * m * m - m + 1.0;
    double b2 = (2.0 * m - kd) * (2.0 * m - kd) / 4.0 + 2.0 * m + 1.0 + eps;
    double b3 = 2.0 * m * m - 2.0 * m * kd + 3.0 * kd * kd / 4.0 + m - 3.0 * kd / 4.0 + eps;
    return std::max({b1, b2, b3});
}

namespace {

// shared pair/diagonal structure of both envelopes; factor(tau) supplies
// either g(|tau|) or |zeta(1 + i tau + 1/log X)|
template <typename FactorFn>
double envelope_generic(const lfunc::ShiftConfig& cfg, double X, FactorFn&& factor) {
    cfg.check_shifts_in_range(X);
    double sum_a2 = 0.0;
    for (double a : cfg.a_vec) sum_a2 += a * a;

    double log_val = std::log(X) + (sum_a2 / 4.0) * std::log(std::log(X));
    for (std::size_t j = 0; j < cfg.k(); ++j) {
        for (std::size_t l = j + 1; l < cfg.k(); ++l) {
            double w = cfg.a_vec[j] * cfg.a_vec[l] / 2.0;
            log_val += w * std::log(factor(cfg.t_vec[j] - cfg.t_vec[l]));
            log_val += w * std::log(factor(cfg.t_vec[j] + cfg.t_vec[l]));
        }
        double w = cfg.a_vec[j] * cfg.a_vec[j] / 4.0 + cfg.a_vec[j] / 2.0;
        log_val += w * std::log(factor(2.0 * cfg.t_vec[j]));
    }
    return std::exp(log_val);
}

} // namespace

double envelope_cor12(const lfunc::ShiftConfig& cfg, double X) {
    return envelope_generic(cfg, X, [&](double tau) { return g_function(std::abs(tau), X); });
}

double envelope_thm11(const lfunc::ShiftConfig& cfg, double X,
                      const zeta::ZetaEvaluator& zeta) {
    double offset = 1.0 / std::log(X);
    return envelope_generic(cfg, X, [&](double tau) {
        return std::abs(zeta.riemann({1.0 + offset, tau}));
    });
}

double envelope_lemma26(const lfunc::ShiftConfig& cfg, double X) {
    double a = cfg.a_total;
    return X * std::pow(std::log(X), a * (a + 1.0) / 2.0);
}

MomentReport shifted_moment_empirical(double X, const lfunc::ShiftConfig& cfg,
                                      const zeta::ZetaEvaluator& zeta,
                                      const lfunc::LRouteConfig& route,
                                      unsigned threads) {
    cfg.check_shifts_in_range(X);
    auto ds = arith::sieve_squarefree_odd(static_cast<std::uint64_t>(std::floor(X)));
    ShiftDedup dd = dedupe_shifts(cfg);

    double total = block_reduce(0, ds.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
        KahanSum acc;
        std::vector<double> abs_l(dd.ts.size());
        for (std::uint64_t i = b; i < e; ++i) {
            arith::QuadChar chi(ds[i]);
            for (std::size_t j = 0; j < dd.ts.size(); ++j) {
                abs_l[j] = std::abs(lfunc::l_value(chi, {0.5, dd.ts[j]}, zeta, route).value);
            }
            acc.add(product_for_d(abs_l, dd, cfg));
        }
        return acc.value();
    });

    MomentReport r;
    r.X = X;
    r.cfg = cfg;
    r.empirical = total;
    r.family_size = ds.size();
    attach_envelopes(r, zeta);
    return r;
}

LGrid abs_l_grid(double X, const std::vector<double>& ts,
                 const zeta::ZetaEvaluator& zeta, const lfunc::LRouteConfig& route,
                 unsigned threads) {
    LGrid grid;
    grid.ds = arith::sieve_squarefree_odd(static_cast<std::uint64_t>(std::floor(X)));
    grid.ts = ts;
    grid.vals.assign(grid.ds.size() * ts.size(), 0.0);

    block_reduce(0, grid.ds.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
            arith::QuadChar chi(grid.ds[i]);
            for (std::size_t j = 0; j < grid.ts.size(); ++j) {
                grid.vals[i * grid.ts.size() + j] =
                    std::abs(lfunc::l_value(chi, {0.5, grid.ts[j]}, zeta, route).value);
            }
        }
        return 0.0;
    });
    return grid;
}

MomentReport moment_from_grid(const LGrid& grid, double X, const lfunc::ShiftConfig& cfg,
                              const zeta::ZetaEvaluator& zeta, unsigned threads) {
    cfg.check_shifts_in_range(X);
    // map each |t_j| onto the grid's shift axis
    std::vector<std::size_t> index(cfg.k());
    for (std::size_t j = 0; j < cfg.k(); ++j) {
        double t = std::abs(cfg.t_vec[j]);
        auto it = std::find(grid.ts.begin(), grid.ts.end(), t);
        if (it == grid.ts.end()) {
            throw std::invalid_argument("moment_from_grid: shift " + std::to_string(t) +
                                        " not present in the grid");
        }
        index[j] = static_cast<std::size_t>(it - grid.ts.begin());
    }

    double total = block_reduce(0, grid.ds.size(), threads,
                                [&](std::uint64_t b, std::uint64_t e) {
        KahanSum acc;
        for (std::uint64_t i = b; i < e; ++i) {
            double prod = 1.0;
            for (std::size_t j = 0; j < cfg.k(); ++j) {
                prod *= std::pow(grid.at(i, index[j]), cfg.a_vec[j]);
            }
            acc.add(prod);
        }
        return acc.value();
    });

    MomentReport r;
    r.X = X;
    r.cfg = cfg;
    r.empirical = total;
    r.family_size = grid.ds.size();
    attach_envelopes(r, zeta);
    return r;
}

double integral_abs_moment(double X, double E_lim, double m, double quad_step,
                           const zeta::ZetaEvaluator& zeta,
                           const lfunc::LRouteConfig& route, unsigned threads) {
    if (E_lim < 0.0) throw std::invalid_argument("integral_abs_moment: E_lim must be >= 0");
    if (!(quad_step > 0.0)) {
        throw std::invalid_argument("integral_abs_moment: quad_step must be positive");
    }
    if (E_lim == 0.0) return 0.0;
    auto ds = arith::sieve_squarefree_odd(static_cast<std::uint64_t>(std::floor(X)));

    // intervals for the base grid; the verification pass halves the step
    std::uint64_t n_base = static_cast<std::uint64_t>(std::ceil(E_lim / quad_step));
    if (n_base % 2 == 1) ++n_base;
    n_base = std::max<std::uint64_t>(n_base, 2);

    return block_reduce(0, ds.size(), threads, [&](std::uint64_t b, std::uint64_t e) {
        KahanSum acc;
        std::vector<double> vals;
        for (std::uint64_t i = b; i < e; ++i) {
            arith::QuadChar chi(ds[i]);
            std::uint64_t n_fine = 2 * n_base;
            double h = E_lim / static_cast<double>(n_fine);
            vals.resize(n_fine + 1);
            for (std::uint64_t j = 0; j <= n_fine; ++j) {
                double t = h * static_cast<double>(j);
                vals[j] = std::abs(lfunc::l_value(chi, {0.5, t}, zeta, route).value);
            }
            auto simpson = [&](std::uint64_t stride) {
                std::uint64_t n = n_fine / stride;
                double hh = h * static_cast<double>(stride);
                KahanSum s;
                s.add(vals[0]);
                s.add(vals[n_fine]);
                for (std::uint64_t j = 1; j < n; ++j) {
                    s.add((j % 2 == 1 ? 4.0 : 2.0) * vals[j * stride]);
                }
                return s.value() * hh / 3.0;
            };
            double coarse = simpson(2);
            double fine = simpson(1);
            if (std::abs(fine - coarse) > 0.01 * std::max(std::abs(fine), 1e-300)) {
                throw numerical_error(
                    "integral_abs_moment: Richardson disagreement above 1% at d=" +
                    std::to_string(ds[i]) + "; quad_step too coarse");
            }
            acc.add(std::pow(fine * fine, m));
        }
        return acc.value();
    });
}

} // namespace qdl::moments
