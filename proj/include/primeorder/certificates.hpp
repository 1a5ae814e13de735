#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "primeorder/arithmetic.hpp"
#include "primeorder/trees.hpp"

namespace primeorder {

/// Pratt certificate: a recursive, self-contained proof of primality.
/// The witness g is a primitive root mod n, established by
///   g^(n-1) = 1 (mod n)  and  g^((n-1)/q) != 1 (mod n)  for each q | n-1,
/// with the primality of each q certified recursively. n = 2 is the base
/// case with no witness and no factors.
struct PrattCertificate {
    struct Factor;

    u64 n = 2;
    std::optional<u64> witness;
    std::vector<Factor> factors;
};

struct PrattCertificate::Factor {
    u64 q;
    u64 k;
    PrattCertificate cert;
};

/// Memoized certificate generation (sub-certificates of small primes are
/// shared across calls). Same cache contract as PrimeTreeCache.
class CertificateCache {
public:
    explicit CertificateCache(const PrimeTable& table) : table_(&table) {}

    const PrimeTable& table() const noexcept { return *table_; }

    PrattCertificate certificate_for(u64 n) {
        if (n < 2) throw domain_error("generate_certificate: n must be >= 2");
        if (!table_->is_prime(n))
            throw not_prime_error("generate_certificate: n is not prime");
        {
            std::lock_guard lock(mu_);
            if (auto it = memo_.find(n); it != memo_.end()) return it->second;
        }
        PrattCertificate cert;
        cert.n = n;
        if (n > 2) {
            const ExponentMap f = factorize(*table_, n - 1);
            for (const auto& [q, k] : f.entries())
                cert.factors.push_back({q, static_cast<u64>(k), certificate_for(q)});
            cert.witness = smallest_witness(n);
        }
        std::lock_guard lock(mu_);
        return memo_.try_emplace(n, std::move(cert)).first->second;
    }

private:
    // smallest g >= 2 satisfying the witness conditions; for prime n this
    // is the least primitive root
    u64 smallest_witness(u64 n) const {
        const auto factors = factorize(*table_, n - 1).entries();
        for (u64 g = 2; g < n; ++g) {
            if (mod_pow(g, n - 1, n) != 1) continue;
            bool ok = true;
            for (const auto& [q, k] : factors) {
                if (mod_pow(g, (n - 1) / q, n) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return g;
        }
        throw domain_error("generate_certificate: no witness found"); // unreachable for prime n
    }

    const PrimeTable* table_;
    std::mutex mu_;
    std::unordered_map<u64, PrattCertificate> memo_;
};

inline PrattCertificate generate_certificate(CertificateCache& cache, u64 n) {
    return cache.certificate_for(n);
}

inline PrattCertificate generate_certificate(const PrimeTable& t, u64 n) {
    CertificateCache cache(t);
    return cache.certificate_for(n);
}

/// Total verification: true iff every invariant holds recursively. Performs
/// only multiplication and modular exponentiation; it never factorizes --
/// the primality of each listed q is exactly what its sub-certificate
/// proves. Duplicate factor entries are malformed and rejected.
inline bool verify_certificate(const PrattCertificate& cert) {
    if (cert.n < 2) return false;
    if (cert.n == 2) return !cert.witness && cert.factors.empty();
    if (!cert.witness || *cert.witness < 2 || *cert.witness >= cert.n) return false;
    if (cert.factors.empty()) return false;

    const u64 target = cert.n - 1;
    u64 product = 1;
    for (const auto& f : cert.factors) {
        if (f.q < 2 || f.k == 0) return false;
        for (u64 i = 0; i < f.k; ++i) {
            if (static_cast<u128>(product) * f.q > target) return false;
            product *= f.q;
        }
    }
    if (product != target) return false;

    for (std::size_t i = 0; i < cert.factors.size(); ++i)
        for (std::size_t j = i + 1; j < cert.factors.size(); ++j)
            if (cert.factors[i].q == cert.factors[j].q) return false;

    const u64 g = *cert.witness;
    if (mod_pow(g, target, cert.n) != 1) return false;
    for (const auto& f : cert.factors)
        if (mod_pow(g, target / f.q, cert.n) == 1) return false;

    for (const auto& f : cert.factors) {
        if (f.cert.n != f.q) return false;
        if (!verify_certificate(f.cert)) return false;
    }
    return true;
}

/// Forget the witnesses: the rooted tree of the certificate, each factor
/// q^k expanded to k sibling copies. Equals prime_tree(cert.n).
inline RootedTree strip_to_tree(const PrattCertificate& cert) {
    if (!verify_certificate(cert))
        throw domain_error("strip_to_tree: certificate does not verify");
    auto rec = [](auto&& self, const PrattCertificate& c) -> RootedTree {
        std::vector<RootedTree> forest;
        for (const auto& f : c.factors) {
            RootedTree sub = self(self, f.cert);
            for (u64 i = 0; i < f.k; ++i) forest.push_back(sub);
        }
        return b_plus(std::move(forest));
    };
    return rec(rec, cert);
}

} // namespace primeorder
