#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "primeorder/errors.hpp"

namespace primeorder {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Sieve of Eratosthenes with a smallest-prime-factor table.
///
/// Immutable after construction; safe to share across threads.
class PrimeTable {
public:
    static constexpr u64 kMaxLimit = 100'000'000;

    explicit PrimeTable(u64 limit) : limit_(limit) {
        if (limit < 2 || limit > kMaxLimit)
            throw bounds_error("sieve: limit must be in [2, 1e8]");
        spf_.assign(limit + 1, 0);
        // linear sieve: every composite is struck exactly once, by its
        // smallest prime factor
        for (u64 i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes_.push_back(i);
            }
            for (u64 p : primes_) {
                if (p > spf_[i] || i * p > limit) break;
                spf_[i * p] = static_cast<std::uint32_t>(p);
            }
        }
    }

    u64 limit() const noexcept { return limit_; }

    const std::vector<u64>& primes() const noexcept { return primes_; }

    /// Smallest prime factor of n, for 2 <= n <= limit.
    u64 smallest_factor(u64 n) const {
        if (n < 2 || n > limit_)
            throw bounds_error("smallest_factor: n outside table");
        return spf_[n];
    }

    /// Primality test. Table lookup up to limit; trial division by sieved
    /// primes up to limit^2; beyond that the table cannot decide.
    bool is_prime(u64 n) const {
        if (n < 2) return false;
        if (n <= limit_) return spf_[n] == n;
        if (n > limit_ * limit_)
            throw bounds_error("is_prime: n exceeds limit^2");
        for (u64 p : primes_) {
            if (static_cast<u128>(p) * p > n) break;
            if (n % p == 0) return false;
        }
        return true;
    }

private:
    u64 limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<u64> primes_;
};

inline PrimeTable sieve(u64 limit) { return PrimeTable(limit); }

/// Finitely supported map prime -> exponent. Houses both factorizations
/// (all exponents positive) and elements of the free abelian group g_P
/// (signed coefficients). Entries are sorted by prime and never zero.
class ExponentMap {
public:
    using Entry = std::pair<u64, i64>;

    ExponentMap() = default;

    static ExponentMap single(u64 p, i64 k) {
        ExponentMap m;
        if (k != 0) m.entries_.emplace_back(p, k);
        return m;
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }

    bool is_zero() const noexcept { return entries_.empty(); }

    std::size_t support_size() const noexcept { return entries_.size(); }

    i64 exponent_of(u64 p) const noexcept {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const Entry& e, u64 key) { return e.first < key; });
        return (it != entries_.end() && it->first == p) ? it->second : 0;
    }

    void add(u64 p, i64 k) {
        if (k == 0) return;
        auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const Entry& e, u64 key) { return e.first < key; });
        if (it != entries_.end() && it->first == p) {
            it->second += k;
            if (it->second == 0) entries_.erase(it);
        } else {
            entries_.insert(it, {p, k});
        }
    }

    ExponentMap& operator+=(const ExponentMap& o) {
        for (const auto& [p, k] : o.entries_) add(p, k);
        return *this;
    }
    ExponentMap& operator-=(const ExponentMap& o) {
        for (const auto& [p, k] : o.entries_) add(p, -k);
        return *this;
    }
    ExponentMap& operator*=(i64 s) {
        if (s == 0) {
            entries_.clear();
        } else {
            for (auto& e : entries_) e.second *= s;
        }
        return *this;
    }

    friend ExponentMap operator+(ExponentMap a, const ExponentMap& b) { return a += b; }
    friend ExponentMap operator-(ExponentMap a, const ExponentMap& b) { return a -= b; }
    friend ExponentMap operator*(ExponentMap a, i64 s) { return a *= s; }
    friend ExponentMap operator*(i64 s, ExponentMap a) { return a *= s; }
    friend ExponentMap operator-(ExponentMap a) { return a *= -1; }

    bool operator==(const ExponentMap&) const = default;

private:
    std::vector<Entry> entries_;
};

/// prod p^k over the entries; requires all exponents nonnegative.
inline u64 product_value(const ExponentMap& m) {
    u64 acc = 1;
    for (const auto& [p, k] : m.entries()) {
        if (k < 0) throw domain_error("product_value: negative exponent");
        for (i64 i = 0; i < k; ++i) {
            if (static_cast<u128>(acc) * p > UINT64_MAX)
                throw bounds_error("product_value: overflow");
            acc *= p;
        }
    }
    return acc;
}

/// Factorization of n >= 1 as an exponent map; factorize(1) is empty.
///
/// Uses the smallest-prime-factor table once n fits under the sieve limit,
/// trial division by sieved primes above it (valid up to limit^2).
inline ExponentMap factorize(const PrimeTable& t, u64 n) {
    if (n == 0) throw domain_error("factorize: n must be positive");
    ExponentMap out;
    for (u64 p : t.primes()) {
        if (n <= t.limit()) break;
        if (static_cast<u128>(p) * p > n) {
            out.add(n, 1); // remainder is prime
            return out;
        }
        i64 k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k) out.add(p, k);
    }
    if (n > t.limit())
        throw bounds_error("factorize: n exceeds the table's range");
    while (n > 1) {
        const u64 p = t.smallest_factor(n);
        i64 k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.add(p, k);
    }
    return out;
}

/// nu_p(n): the exponent of the prime p in n.
inline u64 valuation(const PrimeTable& t, u64 p, u64 n) {
    if (!t.is_prime(p)) throw domain_error("valuation: p is not prime");
    if (n == 0) throw domain_error("valuation: n must be positive");
    u64 k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// p - 1 = 2^m * odd_part, the 2-part isolated.
struct ProthDecomposition {
    u64 m;
    u64 odd_part;
    bool operator==(const ProthDecomposition&) const = default;
};

inline ProthDecomposition proth(const PrimeTable& t, u64 p) {
    if (!t.is_prime(p)) throw domain_error("proth: p is not prime");
    if (p == 2) throw domain_error("proth: p must be an odd prime");
    u64 n = p - 1, m = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++m;
    }
    return {m, n};
}

/// base^exp mod modulus, overflow-free.
inline u64 mod_pow(u64 base, u64 exp, u64 modulus) {
    if (modulus < 2) throw domain_error("mod_pow: modulus must be >= 2");
    u64 result = 1;
    u128 b = base % modulus;
    while (exp) {
        if (exp & 1) result = static_cast<u64>(b * result % modulus);
        b = b * b % modulus;
        exp >>= 1;
    }
    return result;
}

/// Elementary-factor shape of Aut(F_p, +): the factorization of p-1 as
/// ascending (q, k) pairs. Aut(F_2) is trivial, so p = 2 yields nothing.
inline std::vector<std::pair<u64, i64>> aut_structure(const PrimeTable& t, u64 p) {
    if (!t.is_prime(p)) throw domain_error("aut_structure: p is not prime");
    if (p == 2) return {};
    return factorize(t, p - 1).entries();
}

} // namespace primeorder
