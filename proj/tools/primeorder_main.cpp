// Command-line surface for the primeorder library.
//
// Exit codes: 0 success, 1 verification failure, 2 domain error, 3 bounds
// error, 4 parse error, 5 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "primeorder/primeorder.hpp"

namespace {

using namespace primeorder;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBounds = 3;
constexpr int kExitParse = 4;
constexpr int kExitIo = 5;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + output_path);
    f << text;
    f.flush();
    if (!f) throw io_error("write failed: " + output_path);
}

std::string read_all(const std::string& path) {
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for reading: " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// range first (exit 3), then primality (exit 2)
void require_prime_in_range(const PrimeTable& t, u64 p, const char* what) {
    if (p > t.limit()) throw bounds_error(std::string(what) + ": value exceeds --limit");
    if (!t.is_prime(p)) throw domain_error(std::string(what) + ": not prime");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partial order on primes, prime trees, Pratt certificates, and PNT diagnostics"};
    app.require_subcommand(1);

    u64 limit = 1'000'000;
    std::string output;
    app.add_option("--limit", limit, "sieve limit (default 1000000)")
        ->check(CLI::Range(static_cast<u64>(2), PrimeTable::kMaxLimit));
    app.add_option("--output", output, "write output to PATH instead of stdout");

    auto* sc_tree = app.add_subcommand("tree", "render the prime tree t(p)");
    u64 tree_p = 0;
    std::string tree_fmt = "text";
    sc_tree->add_option("p", tree_p, "prime")->required();
    sc_tree->add_option("--format", tree_fmt, "text|json|dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    auto* sc_poset = app.add_subcommand("poset", "generator edge lists for primes <= --limit");
    std::string poset_fmt = "text";
    sc_poset->add_option("--format", poset_fmt, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* sc_cert = app.add_subcommand("cert", "generate or verify a Pratt certificate");
    u64 cert_n = 0;
    std::string verify_path;
    auto* cert_n_opt = sc_cert->add_option("n", cert_n, "prime to certify");
    sc_cert->add_option("--verify", verify_path, "verify certificate JSON from PATH ('-' = stdin)");

    auto* sc_stats = app.add_subcommand("stats", "conjecture sweep over primes in [lo, hi]");
    u64 stats_lo = 0, stats_hi = 0;
    std::string stats_csv;
    sc_stats->add_option("lo", stats_lo, "lower bound")->required();
    sc_stats->add_option("hi", stats_hi, "upper bound")->required();
    sc_stats->add_option("csv", stats_csv, "output CSV path")->required();

    auto* sc_star = app.add_subcommand("star", "p*q = (p-1)(q-1)+1 and its fusion in g_P");
    u64 star_p = 0, star_q = 0;
    sc_star->add_option("p", star_p, "prime")->required();
    sc_star->add_option("q", star_q, "prime")->required();

    auto* sc_div = app.add_subcommand("div", "principal divisor of a positive rational");
    std::string div_arg;
    sc_div->add_option("r", div_arg, "positive integer or N/D")->required();

    auto* sc_psi = app.add_subcommand("psi", "Chebyshev psi(x)");
    u64 psi_x = 0;
    sc_psi->add_option("x", psi_x, "argument")->required();

    // let --limit / --output appear after the subcommand too
    for (CLI::App* sc : {sc_tree, sc_poset, sc_cert, sc_stats, sc_star, sc_div, sc_psi})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitBounds;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (app.got_subcommand(sc_tree)) {
            PrimeTable table(limit);
            require_prime_in_range(table, tree_p, "tree");
            PrimeTreeCache cache(table);
            std::string text;
            if (tree_fmt == "dot")
                text = render_tree_dot(cache, tree_p);
            else if (tree_fmt == "json")
                text = tree_to_json(cache, tree_p).dump() + "\n";
            else
                text = render_tree_text(cache, tree_p);
            emit(text, output);
        } else if (app.got_subcommand(sc_poset)) {
            PrimeTable table(limit);
            PosetView view = build_poset(table);
            std::string text = (poset_fmt == "json") ? poset_to_json(view).dump() + "\n"
                                                     : render_poset_text(view);
            emit(text, output);
        } else if (app.got_subcommand(sc_cert)) {
            if (!verify_path.empty()) {
                PrattCertificate cert = parse_certificate(read_all(verify_path));
                if (!verify_certificate(cert)) {
                    std::cout << "INVALID\n";
                    return kExitVerifyFailed;
                }
                std::cout << "VALID\n";
            } else {
                if (cert_n_opt->count() == 0)
                    throw parse_error("cert: need a number to certify or --verify PATH");
                if (cert_n < 2) throw domain_error("cert: n must be >= 2");
                PrimeTable table(limit);
                PrattCertificate cert = generate_certificate(table, cert_n);
                emit(certificate_to_json(cert).dump(2) + "\n", output);
            }
        } else if (app.got_subcommand(sc_stats)) {
            PrimeTable table(limit);
            PrimeTreeCache cache(table);
            SweepResult sweep = conjecture_sweep(cache, stats_lo, stats_hi);
            std::ofstream csv(stats_csv, std::ios::binary);
            if (!csv) throw io_error("cannot open for writing: " + stats_csv);
            write_stats_csv(csv, sweep);
            csv.flush();
            if (!csv) throw io_error("write failed: " + stats_csv);
            char buf[128];
            std::snprintf(buf, sizeof buf, "rows=%llu\nslope=%.6f\npearson_r=%.6f\n",
                          static_cast<unsigned long long>(sweep.report.rows), sweep.report.slope,
                          sweep.report.pearson_r);
            std::cout << buf;
        } else if (app.got_subcommand(sc_star)) {
            PrimeTable table(limit);
            require_prime_in_range(table, star_p, "star");
            require_prime_in_range(table, star_q, "star");
            const PositiveRational value =
                star_rational(PositiveRational(star_p), PositiveRational(star_q));
            emit(format_rational(value) + " = " + format_gp(fuse(table, star_p, star_q)) + "\n",
                 output);
        } else if (app.got_subcommand(sc_div)) {
            PrimeTable table(limit);
            const PositiveRational r = parse_rational(div_arg);
            emit(format_gp(div_map(table, r)) + "\n", output);
        } else if (app.got_subcommand(sc_psi)) {
            PrimeTable table(limit);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f\n", chebyshev_psi(table, psi_x));
            emit(buf, output);
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const bounds_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBounds;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
