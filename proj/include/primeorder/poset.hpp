#pragma once

#include <unordered_map>
#include <vector>

#include "primeorder/arithmetic.hpp"

namespace primeorder {

/// Generators of p: the primes q with q | p-1 (q << p), ascending.
/// generators(2) is empty; 2 is the minimal element of the POSet.
inline std::vector<u64> generators(const PrimeTable& t, u64 p) {
    if (!t.is_prime(p)) throw domain_error("generators: p is not prime");
    if (p == 2) return {};
    std::vector<u64> out;
    const ExponentMap f = factorize(t, p - 1);
    for (const auto& [q, k] : f.entries()) out.push_back(q);
    return out;
}

/// q << p, the raw generator relation. Note this is the relation itself,
/// not its transitive closure.
inline bool is_generator(const PrimeTable& t, u64 q, u64 p) {
    if (!t.is_prime(q) || !t.is_prime(p))
        throw domain_error("is_generator: arguments must be prime");
    return (p - 1) % q == 0;
}

/// The relation q << p restricted to primes <= limit, stored as explicit
/// ascending edge lists aligned with the table's prime index.
///
/// Holds a pointer to the table; the table must outlive the view.
class PosetView {
public:
    explicit PosetView(const PrimeTable& table) : table_(&table) {
        const auto& ps = table.primes();
        edges_.resize(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (ps[i] == 2) continue;
            const ExponentMap f = factorize(table, ps[i] - 1);
            for (const auto& [q, k] : f.entries()) edges_[i].push_back(q);
        }
    }

    const PrimeTable& table() const noexcept { return *table_; }

    const std::vector<u64>& generators_of(u64 p) const {
        return edges_[index_of(p)];
    }

    std::size_t index_of(u64 p) const {
        const auto& ps = table_->primes();
        auto it = std::lower_bound(ps.begin(), ps.end(), p);
        if (it == ps.end() || *it != p)
            throw domain_error("PosetView: p is not a prime in the table");
        return static_cast<std::size_t>(it - ps.begin());
    }

private:
    const PrimeTable* table_;
    std::vector<std::vector<u64>> edges_;
};

inline PosetView build_poset(const PrimeTable& t) { return PosetView(t); }

/// Multiplicity-free expansion of the generators of p: the downset of p in
/// the POSet drawn as a tree. Children are ordered by descending prime.
struct CutoffTree {
    u64 root_prime;
    std::vector<CutoffTree> children;
};

inline CutoffTree cutoff_tree(const PrimeTable& t, u64 p) {
    if (!t.is_prime(p)) throw domain_error("cutoff_tree: p is not prime");
    CutoffTree node{p, {}};
    const auto gens = generators(t, p);
    for (auto it = gens.rbegin(); it != gens.rend(); ++it)
        node.children.push_back(cutoff_tree(t, *it));
    return node;
}

/// Node count of the longest <<-chain from p down to 2; chain_depth(2) = 1.
inline u64 chain_depth(const PrimeTable& t, u64 p) {
    if (!t.is_prime(p)) throw domain_error("chain_depth: p is not prime");
    std::unordered_map<u64, u64> memo;
    auto rec = [&](auto&& self, u64 q) -> u64 {
        if (q == 2) return 1;
        if (auto it = memo.find(q); it != memo.end()) return it->second;
        u64 best = 0;
        for (u64 g : generators(t, q)) best = std::max(best, self(self, g));
        memo[q] = best + 1;
        return best + 1;
    };
    return rec(rec, p);
}

/// True iff every prime in the view reaches 2 along generator edges.
inline bool verify_connectivity(const PosetView& view) {
    const auto& ps = view.table().primes();
    std::vector<char> reaches(ps.size(), 0);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i] == 2) {
            reaches[i] = 1;
            continue;
        }
        bool ok = false;
        for (u64 q : view.generators_of(ps[i])) {
            if (reaches[view.index_of(q)]) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
        reaches[i] = 1;
    }
    return true;
}

} // namespace primeorder
