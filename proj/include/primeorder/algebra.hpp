#pragma once

#include <numeric>
#include <vector>

#include "primeorder/arithmetic.hpp"
#include "primeorder/trees.hpp"

namespace primeorder {

using i128 = __int128;

/// Element of Q+^x: gcd-reduced pair of positive integers.
struct PositiveRational {
    u64 num{1};
    u64 den{1};

    PositiveRational() = default;
    PositiveRational(u64 n, u64 d = 1) : num(n), den(d) {
        if (num == 0 || den == 0)
            throw domain_error("PositiveRational: numerator and denominator must be positive");
        const u64 g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    bool is_integer() const noexcept { return den == 1; }

    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const PositiveRational&) const = default;
};

namespace detail {

// reduce a signed 128-bit fraction and repack it as a PositiveRational
inline PositiveRational reduce_positive(i128 num, i128 den) {
    if (num <= 0) throw domain_error("star: result is not positive");
    i128 a = num, b = den;
    while (b) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    num /= a;
    den /= a;
    if (num > static_cast<i128>(UINT64_MAX) || den > static_cast<i128>(UINT64_MAX))
        throw bounds_error("star: result exceeds 64-bit range");
    return PositiveRational(static_cast<u64>(num), static_cast<u64>(den));
}

} // namespace detail

inline PositiveRational operator*(const PositiveRational& a, const PositiveRational& b) {
    const u64 g1 = std::gcd(a.num, b.den), g2 = std::gcd(b.num, a.den);
    const u128 n = static_cast<u128>(a.num / g1) * (b.num / g2);
    const u128 d = static_cast<u128>(a.den / g2) * (b.den / g1);
    if (n > UINT64_MAX || d > UINT64_MAX)
        throw bounds_error("PositiveRational: product exceeds 64-bit range");
    return PositiveRational(static_cast<u64>(n), static_cast<u64>(d));
}

/// The formal-group product on Q+^x: (x*y) - 1 = (x-1)(y-1), exactly.
/// Identity 2; defined whenever the right side exceeds -1.
inline PositiveRational star_rational(const PositiveRational& x, const PositiveRational& y) {
    // (x-1)(y-1)+1 over the common denominator xd*yd
    const i128 xn = x.num, xd = x.den, yn = y.num, yd = y.den;
    const i128 num = (xn - xd) * (yn - yd) + xd * yd;
    const i128 den = xd * yd;
    return detail::reduce_positive(num, den);
}

/// The free abelian group on the symbols X_p: finitely supported signed
/// coefficients over primes.
using GpElement = ExponentMap;

/// The basis symbol X_p.
inline GpElement prime_symbol(u64 p) { return ExponentMap::single(p, 1); }

/// Exp(sum k_p X_p) = prod (p-1)^{k_p}; exp_map(0) = 1.
inline PositiveRational exp_map(const GpElement& x) {
    u64 num = 1, den = 1;
    auto mul_checked = [](u64& acc, u64 f) {
        if (static_cast<u128>(acc) * f > UINT64_MAX)
            throw bounds_error("exp_map: overflow");
        acc *= f;
    };
    for (const auto& [p, k] : x.entries()) {
        const u64 base = p - 1;
        u64& side = (k > 0) ? num : den;
        const i64 reps = (k > 0) ? k : -k;
        for (i64 i = 0; i < reps; ++i) mul_checked(side, base);
    }
    return PositiveRational(num, den);
}

/// Partial inverse of Exp: defined only when r+1 is a prime in the table.
/// Note Exp(X_2) = 1 = Exp(0); log_map(1) returns X_2 by convention.
inline GpElement log_map(const PrimeTable& t, const PositiveRational& r) {
    if (!r.is_integer())
        throw undefined_log_error("log_map: r+1 is not prime");
    if (r.num + 1 > t.limit())
        throw bounds_error("log_map: r+1 exceeds the table");
    if (!t.is_prime(r.num + 1))
        throw undefined_log_error("log_map: r+1 is not prime");
    return prime_symbol(r.num + 1);
}

/// Principal divisor: the signed factorization of r as an element of g_P.
/// A homomorphism (Q+, *) -> (g_P, +).
inline GpElement div_map(const PrimeTable& t, const PositiveRational& r) {
    return factorize(t, r.num) - factorize(t, r.den);
}

/// The contraction tau(X_p) = Div(Exp(X_p)) = Div(p-1), extended linearly.
inline GpElement tau(const PrimeTable& t, const GpElement& x) {
    GpElement out;
    for (const auto& [p, k] : x.entries()) {
        if (p == 2) continue; // Div(1) = 0
        out += factorize(t, p - 1) * k;
    }
    return out;
}

/// Fusion rule: X_p * X_q = Div((p-1)(q-1)+1).
inline GpElement fuse(const PrimeTable& t, u64 p, u64 q) {
    if (!t.is_prime(p) || !t.is_prime(q))
        throw domain_error("fuse: arguments must be prime");
    if (p >= (1ULL << 32) || q >= (1ULL << 32))
        throw bounds_error("fuse: arguments must be below 2^32");
    const u64 n = (p - 1) * (q - 1) + 1;
    return factorize(t, n);
}

/// Bilinear extension of the fusion rule to g_P.
inline GpElement fuse_linear(const PrimeTable& t, const GpElement& a, const GpElement& b) {
    GpElement out;
    for (const auto& [p, kp] : a.entries())
        for (const auto& [q, kq] : b.entries())
            out += fuse(t, p, q) * (kp * kq);
    return out;
}

/// Formal integer combination of rooted trees, canonical encodings merged.
struct TreeTerm {
    RootedTree tree;
    i64 coefficient;
};

/// t(sum k_p X_p) = sum k_p t(p): the linear extension of the prime-tree
/// map into the span of rooted trees. Isomorphic trees merge; zero
/// coefficients vanish. Terms come back sorted by encoding.
inline std::vector<TreeTerm> tree_lift(const GpElement& a, PrimeTreeCache& cache) {
    std::vector<TreeTerm> terms;
    for (const auto& [p, k] : a.entries()) terms.push_back({cache.tree_for(p), k});
    std::sort(terms.begin(), terms.end(), [](const TreeTerm& x, const TreeTerm& y) {
        return x.tree.encoding() < y.tree.encoding();
    });
    std::vector<TreeTerm> merged;
    for (auto& term : terms) {
        if (!merged.empty() && merged.back().tree == term.tree)
            merged.back().coefficient += term.coefficient;
        else
            merged.push_back(std::move(term));
    }
    std::erase_if(merged, [](const TreeTerm& t) { return t.coefficient == 0; });
    return merged;
}

/// One associativity failure of the transported fusion rule.
struct FusionMismatch {
    u64 p, q, r;
    GpElement left;  // (X_p * X_q) * X_r
    GpElement right; // X_p * (X_q * X_r)
};

/// Exhaustive scan of prime triples p,q,r <= bound comparing the two
/// bracketings of the fusion product. The rational star is associative;
/// its transport through factorization is not, and this reports where.
inline std::vector<FusionMismatch> fusion_associativity_scan(const PrimeTable& t, u64 bound) {
    std::vector<u64> ps;
    for (u64 p : t.primes()) {
        if (p > bound) break;
        ps.push_back(p);
    }
    std::vector<FusionMismatch> out;
    for (u64 p : ps)
        for (u64 q : ps) {
            const GpElement pq = fuse(t, p, q);
            for (u64 r : ps) {
                GpElement left = fuse_linear(t, pq, prime_symbol(r));
                GpElement right = fuse_linear(t, prime_symbol(p), fuse(t, q, r));
                if (left != right) out.push_back({p, q, r, std::move(left), std::move(right)});
            }
        }
    return out;
}

} // namespace primeorder
