#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "primeorder/arithmetic.hpp"

namespace primeorder {

/// Unordered rooted tree held in canonical form.
///
/// Children are stored sorted by their AHU encoding, so structural equality
/// coincides with tree isomorphism. Nodes are immutable and shared; copies
/// are cheap and subtrees may alias freely.
class RootedTree {
public:
    /// A single node (the tree of the prime 2).
    RootedTree() : node_(leaf_node()) {}

    const std::vector<RootedTree>& children() const noexcept { return node_->children; }

    bool is_leaf() const noexcept { return node_->children.empty(); }

    /// AHU canonical form: leaf -> "()", node -> "(" ++ sorted child
    /// encodings ++ ")". Equal iff the trees are isomorphic.
    const std::string& encoding() const noexcept { return node_->encoding; }

    /// Total node count, root included. Repeated (shared) subtrees count
    /// with multiplicity.
    u64 degree() const noexcept { return node_->degree; }

    friend bool operator==(const RootedTree& a, const RootedTree& b) {
        return a.node_ == b.node_ || a.node_->encoding == b.node_->encoding;
    }

    friend RootedTree b_plus(std::vector<RootedTree> forest);

private:
    struct Node {
        std::vector<RootedTree> children;
        std::string encoding;
        u64 degree;
    };

    explicit RootedTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static const std::shared_ptr<const Node>& leaf_node() {
        static const std::shared_ptr<const Node> leaf =
            std::make_shared<const Node>(Node{{}, "()", 1});
        return leaf;
    }

    std::shared_ptr<const Node> node_;
};

/// Adjoin a common root to the forest. b_plus({}) is the single node.
inline RootedTree b_plus(std::vector<RootedTree> forest) {
    if (forest.empty()) return RootedTree();
    std::sort(forest.begin(), forest.end(),
              [](const RootedTree& a, const RootedTree& b) { return a.encoding() < b.encoding(); });
    std::string enc = "(";
    u64 deg = 1;
    for (const auto& child : forest) {
        enc += child.encoding();
        deg += child.degree();
    }
    enc += ')';
    return RootedTree(std::make_shared<const RootedTree::Node>(
        RootedTree::Node{std::move(forest), std::move(enc), deg}));
}

inline u64 degree(const RootedTree& t) noexcept { return t.degree(); }

inline const std::string& encode(const RootedTree& t) noexcept { return t.encoding(); }

/// Memoized construction of the prime trees t(p). Lookups may run
/// concurrently; results are identical regardless of interleaving because
/// trees are built in canonical form.
class PrimeTreeCache {
public:
    explicit PrimeTreeCache(const PrimeTable& table) : table_(&table) {}

    const PrimeTable& table() const noexcept { return *table_; }

    /// t(2) = single node; t(p) = B+ of the trees of the prime factors of
    /// p-1, a factor q^k contributing k sibling copies of t(q).
    RootedTree tree_for(u64 p) {
        if (p > table_->limit() || !table_->is_prime(p))
            throw domain_error("prime_tree: p must be a prime within the table");
        {
            std::lock_guard lock(mu_);
            if (auto it = memo_.find(p); it != memo_.end()) return it->second;
        }
        std::vector<RootedTree> forest;
        if (p > 2) {
            const ExponentMap f = factorize(*table_, p - 1);
            for (const auto& [q, k] : f.entries()) {
                RootedTree sub = tree_for(q);
                for (i64 i = 0; i < k; ++i) forest.push_back(sub);
            }
        }
        RootedTree t = b_plus(std::move(forest));
        std::lock_guard lock(mu_);
        return memo_.try_emplace(p, std::move(t)).first->second;
    }

private:
    const PrimeTable* table_;
    std::mutex mu_;
    std::unordered_map<u64, RootedTree> memo_;
};

inline RootedTree prime_tree(PrimeTreeCache& cache, u64 p) { return cache.tree_for(p); }

/// w(p): number of distinct prime divisors of p-1 (the rank of Aut(F_p,+)).
inline u64 support_grading(const PrimeTable& t, u64 p) {
    if (!t.is_prime(p)) throw domain_error("support_grading: p is not prime");
    if (p == 2) return 0;
    return factorize(t, p - 1).support_size();
}

/// W(p): sum of the exponents in the factorization of p-1; equals the child
/// count of the root of t(p).
inline u64 total_weight(const PrimeTable& t, u64 p) {
    if (!t.is_prime(p)) throw domain_error("total_weight: p is not prime");
    if (p == 2) return 0;
    u64 w = 0;
    const ExponentMap f = factorize(t, p - 1);
    for (const auto& [q, k] : f.entries()) w += static_cast<u64>(k);
    return w;
}

} // namespace primeorder
