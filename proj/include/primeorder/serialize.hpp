#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "primeorder/algebra.hpp"
#include "primeorder/analytic.hpp"
#include "primeorder/certificates.hpp"
#include "primeorder/poset.hpp"
#include "primeorder/trees.hpp"

namespace primeorder {

namespace detail {

// children of p as (prime, tree) pairs in canonical order: ascending by the
// child's encoding, q^k contributing k entries
inline std::vector<std::pair<u64, RootedTree>> labeled_children(PrimeTreeCache& cache, u64 p) {
    std::vector<std::pair<u64, RootedTree>> kids;
    if (p == 2) return kids;
    const ExponentMap f = factorize(cache.table(), p - 1);
    for (const auto& [q, k] : f.entries()) {
        RootedTree sub = cache.tree_for(q);
        for (i64 i = 0; i < k; ++i) kids.emplace_back(q, sub);
    }
    std::sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) {
        return a.second.encoding() < b.second.encoding();
    });
    return kids;
}

inline std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace detail

/// DOT rendering of t(p): nodes numbered in depth-first preorder over the
/// canonical child order, labeled with the prime value of the subtree.
inline std::string render_tree_dot(PrimeTreeCache& cache, u64 p) {
    cache.tree_for(p); // validates p
    std::string out = "digraph prime_tree {\n";
    u64 next_id = 0;
    auto rec = [&](auto&& self, u64 prime) -> u64 {
        const u64 id = next_id++;
        out += "  n" + std::to_string(id) + " [label=\"" + std::to_string(prime) + "\"];\n";
        for (const auto& [q, sub] : detail::labeled_children(cache, prime)) {
            out += "  n" + std::to_string(id) + " -> n" + std::to_string(next_id) + ";\n";
            self(self, q);
        }
        return id;
    };
    rec(rec, p);
    out += "}\n";
    return out;
}

/// JSON rendering of t(p): {"p": <prime>, "children": [...]}, children in
/// canonical order.
inline nlohmann::ordered_json tree_to_json(PrimeTreeCache& cache, u64 p) {
    cache.tree_for(p);
    nlohmann::ordered_json node;
    node["p"] = p;
    node["children"] = nlohmann::ordered_json::array();
    for (const auto& [q, sub] : detail::labeled_children(cache, p))
        node["children"].push_back(tree_to_json(cache, q));
    return node;
}

/// Indented listing of t(p), one node per line, two spaces per level.
inline std::string render_tree_text(PrimeTreeCache& cache, u64 p) {
    cache.tree_for(p);
    std::string out;
    auto rec = [&](auto&& self, u64 prime, unsigned depth) -> void {
        out.append(2 * depth, ' ');
        out += std::to_string(prime);
        out += '\n';
        for (const auto& [q, sub] : detail::labeled_children(cache, prime))
            self(self, q, depth + 1);
    };
    rec(rec, p, 0);
    return out;
}

/// Textual form of a g_P element: signed sum sorted by prime,
/// e.g. "X2 + 2*X3", "-2*X2 + 2*X3"; the zero element is "0".
inline std::string format_gp(const GpElement& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, k] : a.entries()) {
        if (first) {
            if (k < 0) out += '-';
        } else {
            out += (k < 0) ? " - " : " + ";
        }
        const u64 mag = static_cast<u64>(k < 0 ? -k : k);
        if (mag != 1) out += std::to_string(mag) + "*";
        out += "X" + std::to_string(p);
        first = false;
    }
    return out;
}

inline std::string format_rational(const PositiveRational& r) {
    if (r.is_integer()) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

/// "N" or "N/D" -> PositiveRational.
inline PositiveRational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return PositiveRational(std::stoull(s));
        return PositiveRational(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw parse_error("expected a positive integer or N/D fraction: " + s);
    }
}

/// Certificate JSON schema:
///   {"n": int, "witness": int|null, "factors": [{"q": int, "k": int, "cert": ...}]}
inline nlohmann::ordered_json certificate_to_json(const PrattCertificate& cert) {
    nlohmann::ordered_json j;
    j["n"] = cert.n;
    if (cert.witness)
        j["witness"] = *cert.witness;
    else
        j["witness"] = nullptr;
    j["factors"] = nlohmann::ordered_json::array();
    for (const auto& f : cert.factors) {
        nlohmann::ordered_json jf;
        jf["q"] = f.q;
        jf["k"] = f.k;
        jf["cert"] = certificate_to_json(f.cert);
        j["factors"].push_back(std::move(jf));
    }
    return j;
}

inline PrattCertificate certificate_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("witness") || !j.contains("factors"))
        throw parse_error("certificate: expected object with n, witness, factors");
    if (!j["n"].is_number_unsigned())
        throw parse_error("certificate: n must be a nonnegative integer");
    PrattCertificate cert;
    cert.n = j["n"].get<u64>();
    if (j["witness"].is_null())
        cert.witness = std::nullopt;
    else if (j["witness"].is_number_unsigned())
        cert.witness = j["witness"].get<u64>();
    else
        throw parse_error("certificate: witness must be null or a nonnegative integer");
    if (!j["factors"].is_array())
        throw parse_error("certificate: factors must be an array");
    for (const auto& jf : j["factors"]) {
        if (!jf.is_object() || !jf.contains("q") || !jf.contains("k") || !jf.contains("cert"))
            throw parse_error("certificate: factor needs q, k, cert");
        if (!jf["q"].is_number_unsigned() || !jf["k"].is_number_unsigned())
            throw parse_error("certificate: q and k must be nonnegative integers");
        cert.factors.push_back(
            {jf["q"].get<u64>(), jf["k"].get<u64>(), certificate_from_json(jf["cert"])});
    }
    return cert;
}

inline PrattCertificate parse_certificate(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("certificate: ") + e.what());
    }
    return certificate_from_json(j);
}

/// CSV for the conjecture pipeline: header p,ln_p,deg_t,w,W,depth, one row
/// per prime (ln_p to 6 significant digits, LF endings), then the report as
/// comment lines.
inline void write_stats_csv(std::ostream& os, const SweepResult& s) {
    os << "p,ln_p,deg_t,w,W,depth\n";
    for (const auto& r : s.rows) {
        os << r.p << ',' << detail::format_double("%.6g", r.ln_p) << ',' << r.deg_t << ','
           << r.w << ',' << r.W << ',' << r.depth << '\n';
    }
    os << "# slope=" << detail::format_double("%.6f", s.report.slope) << '\n';
    os << "# pearson_r=" << detail::format_double("%.6f", s.report.pearson_r) << '\n';
}

/// Poset edge listing: one line per odd prime, "p: q1 q2 ...".
inline std::string render_poset_text(const PosetView& view) {
    std::string out;
    for (u64 p : view.table().primes()) {
        if (p == 2) continue;
        out += std::to_string(p) + ":";
        for (u64 q : view.generators_of(p)) out += " " + std::to_string(q);
        out += '\n';
    }
    return out;
}

/// Poset as a JSON adjacency object keyed by prime, ascending.
inline nlohmann::ordered_json poset_to_json(const PosetView& view) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (u64 p : view.table().primes()) {
        if (p == 2) continue;
        j[std::to_string(p)] = view.generators_of(p);
    }
    return j;
}

} // namespace primeorder
