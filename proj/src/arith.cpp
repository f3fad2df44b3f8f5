// arith.cpp
#include "qdl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qdl/errors.hpp"

namespace qdl::arith {

int jacobi_symbol(std::int64_t a, std::uint64_t n) {
    if (n == 0 || n % 2 == 0) {
        throw std::invalid_argument("jacobi_symbol: n must be odd and positive, got " +
                                    std::to_string(n));
    }
    std::uint64_t ua;
    {
        std::int64_t r = a % static_cast<std::int64_t>(n);
        if (r < 0) r += static_cast<std::int64_t>(n);
        ua = static_cast<std::uint64_t>(r);
    }
    int t = 1;
    while (ua != 0) {
        while (ua % 2 == 0) {
            ua /= 2;
            std::uint64_t r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(ua, n);
        if (ua % 4 == 3 && n % 4 == 3) t = -t;
        ua %= n;
    }
    return n == 1 ? t : 0;
}

// ---------------------------------------------------------------- PrimeTable

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) limit_ = limit = 2;
    std::vector<bool> composite(limit + 1, false);
    mobius_.assign(limit + 1, 1);
    omega_.assign(limit + 1, 0);
    mobius_[0] = 0;

    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes_.push_back(p);
        for (std::uint64_t m = 2 * p; m <= limit; m += p) composite[m] = true;
        for (std::uint64_t m = p; m <= limit; m += p) mobius_[m] = -mobius_[m];
        if (p <= limit / p) {
            std::uint64_t p2 = p * p;
            for (std::uint64_t m = p2; m <= limit; m += p2) mobius_[m] = 0;
        }
        // Omega counts each prime power q = p^k dividing n once.
        for (std::uint64_t q = p; q <= limit; q = (q <= limit / p) ? q * p : limit + 1) {
            for (std::uint64_t m = q; m <= limit; m += q) ++omega_[m];
        }
    }
}

void PrimeTable::check_range(std::uint64_t n) const {
    if (n > limit_) {
        throw table_error("PrimeTable: n=" + std::to_string(n) + " exceeds limit " +
                          std::to_string(limit_));
    }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
    check_range(n);
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

int PrimeTable::mobius(std::uint64_t n) const {
    check_range(n);
    if (n == 0) throw std::invalid_argument("mobius: n must be >= 1");
    return mobius_[n];
}

unsigned PrimeTable::omega_big(std::uint64_t n) const {
    check_range(n);
    if (n == 0) throw std::invalid_argument("omega_big: n must be >= 1");
    return omega_[n];
}

double PrimeTable::lambda_vm(std::uint64_t n) const {
    check_range(n);
    if (n == 0) throw std::invalid_argument("lambda_vm: n must be >= 1");
    if (n == 1) return 0.0;
    // n is a prime power p^k iff Omega(n) = k, the rounded k-th root is
    // prime and its k-th power recovers n exactly.
    unsigned k = omega_[n];
    std::uint64_t p = n;
    if (k > 1) {
        std::uint64_t guess = static_cast<std::uint64_t>(std::llround(
            std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k))));
        p = 0;
        for (std::uint64_t q = (guess > 1 ? guess - 1 : 2); q <= guess + 1; ++q) {
            std::uint64_t pw = 1;
            bool ovf = false;
            for (unsigned i = 0; i < k; ++i) {
                if (pw > n / q) { ovf = true; break; }
                pw *= q;
            }
            if (!ovf && pw == n) { p = q; break; }
        }
        if (p == 0) return 0.0;
    }
    if (!std::binary_search(primes_.begin(), primes_.end(), p)) return 0.0;
    return std::log(static_cast<double>(p));
}

std::vector<std::pair<std::uint64_t, unsigned>> PrimeTable::factor(std::uint64_t n) const {
    check_range(n);
    if (n == 0) throw std::invalid_argument("factor: n must be >= 1");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p : primes_) {
        if (p * p > n) break;
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1u);
    return out;
}

// ------------------------------------------------------------ square-free d

namespace {
constexpr std::uint64_t kSegmentLen = 1u << 20;
}

std::vector<std::uint64_t> sieve_squarefree_odd_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi < 1 || hi < lo) return out;
    if (lo < 1) lo = 1;

    // primes up to sqrt(hi) for the square sieve
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    while (root * root > hi + root) --root;
    std::vector<std::uint64_t> small_primes;
    {
        std::vector<bool> comp(root + 1, false);
        for (std::uint64_t p = 2; p <= root; ++p) {
            if (comp[p]) continue;
            small_primes.push_back(p);
            for (std::uint64_t m = p * p; m <= root; m += p) comp[m] = true;
        }
    }

    std::vector<bool> has_square;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegmentLen) {
        std::uint64_t seg_hi = std::min(hi, seg_lo + kSegmentLen - 1);
        has_square.assign(seg_hi - seg_lo + 1, false);
        for (std::uint64_t p : small_primes) {
            std::uint64_t p2 = p * p;
            if (p2 > seg_hi) break;
            std::uint64_t start = ((seg_lo + p2 - 1) / p2) * p2;
            for (std::uint64_t m = start; m <= seg_hi; m += p2) has_square[m - seg_lo] = true;
        }
        std::uint64_t d = seg_lo % 2 == 0 ? seg_lo + 1 : seg_lo;
        for (; d <= seg_hi; d += 2) {
            if (!has_square[d - seg_lo]) out.push_back(d);
        }
    }
    return out;
}

std::vector<std::uint64_t> sieve_squarefree_odd(std::uint64_t X) {
    return sieve_squarefree_odd_range(1, X);
}

bool is_odd_squarefree(std::uint64_t d) {
    if (d == 0 || d % 2 == 0) return false;
    for (std::uint64_t p = 3; p * p <= d; p += 2) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0) return false;
        }
    }
    return true;
}

double weight_A(std::uint64_t d) {
    if (!is_odd_squarefree(d)) {
        throw std::invalid_argument("weight_A: d=" + std::to_string(d) +
                                    " is not odd square-free");
    }
    double A = 1.0;
    std::uint64_t rest = d;
    for (std::uint64_t p = 3; p * p <= rest; p += 2) {
        if (rest % p == 0) {
            rest /= p;
            A *= 1.0 - 1.0 / (2.0 * static_cast<double>(p));
        }
    }
    if (rest > 1) A *= 1.0 - 1.0 / (2.0 * static_cast<double>(rest));
    return A;
}

std::uint64_t w_factorial(std::uint64_t n, const PrimeTable& table) {
    if (n == 0) throw std::invalid_argument("w_factorial: n must be >= 1");
    std::uint64_t w = 1;
    for (auto [p, e] : table.factor(n)) {
        (void)p;
        if (e >= 21) throw std::overflow_error("w_factorial: exponent too large");
        for (unsigned i = 2; i <= e; ++i) w *= i;
    }
    return w;
}

// ------------------------------------------------------------------ QuadChar

QuadChar::QuadChar(std::uint64_t d) : d_(d) {
    if (!is_odd_squarefree(d)) {
        throw std::invalid_argument("QuadChar: d=" + std::to_string(d) +
                                    " must be odd, positive and square-free");
    }
}

void QuadChar::build_period_cache(std::uint64_t bound) {
    std::uint64_t q = modulus();
    if (q > bound || !period_.empty()) return;
    period_.assign(q, 0);
    for (std::uint64_t n = 1; n < q; n += 2) {
        period_[n] = static_cast<std::int8_t>(
            jacobi_symbol(static_cast<std::int64_t>(q % n), n));
    }
}

} // namespace qdl::arith
