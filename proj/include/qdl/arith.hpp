// arith.hpp
// Integer-arithmetic substrate: prime sieve with multiplicative-function
// tables, Jacobi symbols, the quadratic character chi^(8d), square-free
// enumeration and the local weight A(d). Everything downstream builds on
// this module.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qdl::arith {

// Jacobi symbol (a/n) for odd n >= 1, computed by the binary
// reciprocity algorithm (no factorization). a is reduced mod n first.
// Throws std::invalid_argument for even or nonpositive n.
int jacobi_symbol(std::int64_t a, std::uint64_t n);

// -------------------------------------------------------------------------
// PrimeTable: primes up to `limit` plus mu(n), Omega(n) and Lambda(n).
// Immutable after construction; safe to share across threads.
// Memory: ~2 bytes per integer up to limit.
// -------------------------------------------------------------------------
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    bool is_prime(std::uint64_t n) const;

    // Mobius function, 0 on non-square-free n.
    int mobius(std::uint64_t n) const;

    // Omega(n): number of prime-power divisors with multiplicity.
    unsigned omega_big(std::uint64_t n) const;

    // von Mangoldt: log p at prime powers p^k, else 0.
    double lambda_vm(std::uint64_t n) const;

    // Factorization of n <= limit by trial division over the prime list.
    // Pairs (p, exponent) in increasing p.
    std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) const;

private:
    void check_range(std::uint64_t n) const;

    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::int8_t> mobius_;
    std::vector<std::uint8_t> omega_;
};

// All odd square-free d with 1 <= d <= X, ascending. Segmented square
// sieve; segment length 2^20 bounds memory at large X.
std::vector<std::uint64_t> sieve_squarefree_odd(std::uint64_t X);

// Same, restricted to lo <= d <= hi (used by smoothed d-sums whose bump
// support extends beyond X).
std::vector<std::uint64_t> sieve_squarefree_odd_range(std::uint64_t lo, std::uint64_t hi);

// true iff d is odd, positive and square-free (trial division).
bool is_odd_squarefree(std::uint64_t d);

// A(d) = prod_{p|d} (1 - 1/(2p)); empty product = 1. Requires d odd
// square-free; throws otherwise.
double weight_A(std::uint64_t d);

// Multiplicative w with w(p^a) = a!. Requires n >= 1 and n <= table.limit;
// throws on overflow (exponents >= 21 cannot happen below 2^63 anyway for
// the table sizes used here).
std::uint64_t w_factorial(std::uint64_t n, const PrimeTable& table);

// -------------------------------------------------------------------------
// QuadChar: the real primitive character chi^(8d) = (8d/.) of modulus 8d,
// for odd square-free d > 0. chi(n) = 0 for even n; chi is completely
// multiplicative and periodic mod 8d.
// -------------------------------------------------------------------------
class QuadChar {
public:
    // Throws std::invalid_argument unless d is odd, positive, square-free.
    explicit QuadChar(std::uint64_t d);

    std::uint64_t d() const { return d_; }
    std::uint64_t modulus() const { return 8 * d_; }

    int operator()(std::uint64_t n) const {
        if (n % 2 == 0) return 0;
        if (!period_.empty()) return period_[n % period_.size()];
        return jacobi_symbol(static_cast<std::int64_t>(modulus() % n), n);
    }

    // Precompute one period chi(0..8d-1) when 8d <= bound; scans over n
    // then cost one table lookup each. Default bound 2^20.
    void build_period_cache(std::uint64_t bound = (1u << 20));
    bool has_period_cache() const { return !period_.empty(); }

private:
    std::uint64_t d_;
    std::vector<std::int8_t> period_;
};

} // namespace qdl::arith
