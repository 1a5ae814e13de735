#pragma once

#include <bit>
#include <cmath>
#include <vector>

#include "primeorder/algebra.hpp"
#include "primeorder/poset.hpp"
#include "primeorder/trees.hpp"

namespace primeorder {

/// Mangoldt function: ln p when n = p^k, 0 otherwise (including n = 1).
inline double mangoldt(const PrimeTable& t, u64 n) {
    if (n == 0) throw domain_error("mangoldt: n must be positive");
    if (n == 1) return 0.0;
    if (n > t.limit()) {
        const auto f = factorize(t, n);
        return f.support_size() == 1 ? std::log(static_cast<double>(f.entries()[0].first)) : 0.0;
    }
    const u64 p = t.smallest_factor(n);
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

/// Chebyshev Psi(x) = sum_{n <= x} Mangoldt(n), computed over prime powers:
/// sum over primes p <= x of floor(log_p x) * ln p. (The n <= x convention;
/// the sum's jumps sit exactly at prime powers.)
inline double chebyshev_psi(const PrimeTable& t, u64 x) {
    if (x == 0) throw domain_error("chebyshev_psi: x must be positive");
    if (x > t.limit()) throw bounds_error("chebyshev_psi: x exceeds the table");
    double sum = 0.0;
    for (u64 p : t.primes()) {
        if (p > x) break;
        u64 k = 0;
        u128 power = p;
        while (power <= x) {
            ++k;
            power *= p;
        }
        sum += static_cast<double>(k) * std::log(static_cast<double>(p));
    }
    return sum;
}

/// The same sum taken term by term over the Mangoldt function; the second
/// route of the dual computation.
inline double chebyshev_psi_direct(const PrimeTable& t, u64 x) {
    if (x == 0) throw domain_error("chebyshev_psi: x must be positive");
    if (x > t.limit()) throw bounds_error("chebyshev_psi: x exceeds the table");
    double sum = 0.0;
    for (u64 n = 2; n <= x; ++n) sum += mangoldt(t, n);
    return sum;
}

/// pi(x): count of primes <= x.
inline u64 prime_pi(const PrimeTable& t, u64 x) {
    if (x == 0) throw domain_error("prime_pi: x must be positive");
    if (x > t.limit()) throw bounds_error("prime_pi: x exceeds the table");
    const auto& ps = t.primes();
    return static_cast<u64>(std::upper_bound(ps.begin(), ps.end(), x) - ps.begin());
}

/// The integral on (g_P, ln(p) dp): sum of coefficient * ln(prime).
/// integral(div_map(n)) = ln n.
inline double integral(const GpElement& k) {
    double sum = 0.0;
    for (const auto& [p, c] : k.entries())
        sum += static_cast<double>(c) * std::log(static_cast<double>(p));
    return sum;
}

/// Per-prime record for the ln(p) ~ deg(t_p) pipeline.
struct StatRow {
    u64 p;
    double ln_p;
    u64 deg_t;
    u64 w;
    u64 W;
    u64 depth;
};

struct DyadicBucket {
    u64 lo;  // 2^k, inclusive
    u64 hi;  // 2^(k+1), exclusive
    u64 count;
    double mean_deg;
};

struct ConjectureReport {
    u64 rows = 0;
    double slope = 0.0;     // least squares of deg_t on ln_p through the origin
    double pearson_r = 0.0; // 0 when undefined (fewer than two rows or zero variance)
    std::vector<DyadicBucket> bucket_means;
};

struct SweepResult {
    std::vector<StatRow> rows;
    ConjectureReport report;
};

/// One StatRow per prime in [lo, hi], plus the regression report. Rows are
/// produced in ascending order; the computation is deterministic.
inline SweepResult conjecture_sweep(PrimeTreeCache& cache, u64 lo, u64 hi) {
    const PrimeTable& t = cache.table();
    if (lo < 2 || lo > hi || hi > t.limit())
        throw bounds_error("conjecture_sweep: need 2 <= lo <= hi <= limit");

    SweepResult out;
    for (u64 p : t.primes()) {
        if (p < lo) continue;
        if (p > hi) break;
        StatRow row;
        row.p = p;
        row.ln_p = std::log(static_cast<double>(p));
        row.deg_t = cache.tree_for(p).degree();
        row.w = support_grading(t, p);
        row.W = total_weight(t, p);
        row.depth = chain_depth(t, p);
        out.rows.push_back(row);
    }

    auto& rep = out.report;
    rep.rows = out.rows.size();
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const auto& r : out.rows) {
        const double x = r.ln_p, y = static_cast<double>(r.deg_t);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    rep.slope = (sxx > 0) ? sxy / sxx : 0.0;
    const double n = static_cast<double>(rep.rows);
    const double den2 = (n * sxx - sx * sx) * (n * syy - sy * sy);
    rep.pearson_r = (den2 > 0) ? (n * sxy - sx * sy) / std::sqrt(den2) : 0.0;

    for (const auto& r : out.rows) {
        const int b = std::bit_width(r.p) - 1; // floor(log2 p), exact
        const u64 blo = 1ULL << b;
        if (rep.bucket_means.empty() || rep.bucket_means.back().lo != blo)
            rep.bucket_means.push_back({blo, blo << 1, 0, 0.0});
        auto& bucket = rep.bucket_means.back();
        bucket.mean_deg += static_cast<double>(r.deg_t); // running sum for now
        bucket.count += 1;
    }
    for (auto& bucket : rep.bucket_means) bucket.mean_deg /= static_cast<double>(bucket.count);
    return out;
}

/// PNT checkpoint row: x, pi(x), pi(x)ln(x)/x, Psi(x)/x.
struct PntRow {
    u64 x;
    u64 pi;
    double pi_ln_over_x;
    double psi_over_x;
};

inline std::vector<PntRow> pnt_table(const PrimeTable& t, const std::vector<u64>& checkpoints) {
    std::vector<PntRow> rows;
    for (u64 x : checkpoints) {
        const u64 pi = prime_pi(t, x);
        const double xd = static_cast<double>(x);
        rows.push_back({x, pi, static_cast<double>(pi) * std::log(xd) / xd,
                        chebyshev_psi(t, x) / xd});
    }
    return rows;
}

} // namespace primeorder
