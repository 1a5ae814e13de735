#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "primeorder/serialize.hpp"
#include "support/tables.hpp"

using namespace primeorder;
using testsupport::table_1m;

namespace {

ExponentMap em(std::initializer_list<std::pair<u64, i64>> entries) {
    ExponentMap m;
    for (const auto& [p, k] : entries) m.add(p, k);
    return m;
}

constexpr const char* kDot47 = R"(digraph prime_tree {
  n0 [label="47"];
  n0 -> n1;
  n1 [label="23"];
  n1 -> n2;
  n2 [label="11"];
  n2 -> n3;
  n3 [label="5"];
  n3 -> n4;
  n4 [label="2"];
  n3 -> n5;
  n5 [label="2"];
  n2 -> n6;
  n6 [label="2"];
  n1 -> n7;
  n7 [label="2"];
  n0 -> n8;
  n8 [label="2"];
}
)";

constexpr const char* kDot181 = R"(digraph prime_tree {
  n0 [label="181"];
  n0 -> n1;
  n1 [label="5"];
  n1 -> n2;
  n2 [label="2"];
  n1 -> n3;
  n3 [label="2"];
  n0 -> n4;
  n4 [label="3"];
  n4 -> n5;
  n5 [label="2"];
  n0 -> n6;
  n6 [label="3"];
  n6 -> n7;
  n7 [label="2"];
  n0 -> n8;
  n8 [label="2"];
  n0 -> n9;
  n9 [label="2"];
}
)";

} // namespace

TEST_CASE("gp element formatting") {
    REQUIRE(format_gp(GpElement{}) == "0");
    REQUIRE(format_gp(em({{2, 1}, {3, 2}})) == "X2 + 2*X3");
    REQUIRE(format_gp(em({{2, -2}, {3, 2}})) == "-2*X2 + 2*X3");
    REQUIRE(format_gp(em({{2, 1}, {23, -1}})) == "X2 - X23");
    REQUIRE(format_gp(em({{13, 2}})) == "2*X13");
}

TEST_CASE("rational formatting and parsing") {
    REQUIRE(format_rational(PositiveRational(9)) == "9");
    REQUIRE(format_rational(PositiveRational(9, 4)) == "9/4");
    REQUIRE(parse_rational("18") == PositiveRational(18));
    REQUIRE(parse_rational("9/4") == PositiveRational(9, 4));
    REQUIRE_THROWS_AS(parse_rational("abc"), parse_error);
    REQUIRE_THROWS_AS(parse_rational("9/0"), domain_error);
}

TEST_CASE("tree DOT golden files") {
    PrimeTreeCache cache(table_1m());
    REQUIRE(render_tree_dot(cache, 47) == kDot47);
    REQUIRE(render_tree_dot(cache, 181) == kDot181);
}

TEST_CASE("tree JSON") {
    PrimeTreeCache cache(table_1m());
    REQUIRE(tree_to_json(cache, 2).dump() == R"({"p":2,"children":[]})");
    auto j47 = tree_to_json(cache, 47);
    REQUIRE(j47["p"] == 47);
    REQUIRE(j47["children"].size() == 2);
    REQUIRE(j47["children"][0]["p"] == 23);
    REQUIRE(j47["children"][1]["p"] == 2);
}

TEST_CASE("tree text listing") {
    PrimeTreeCache cache(table_1m());
    REQUIRE(render_tree_text(cache, 2) == "2\n");
    const std::string text = render_tree_text(cache, 181);
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 10);
    REQUIRE(text.substr(0, 4) == "181\n");
}

TEST_CASE("poset text and json") {
    PrimeTable t10(10);
    PosetView view = build_poset(t10);
    REQUIRE(render_poset_text(view) == "3: 2\n5: 2\n7: 2 3\n");
    REQUIRE(poset_to_json(view).dump() == R"({"3":[2],"5":[2],"7":[2,3]})");

    PrimeTable t2(2);
    REQUIRE(render_poset_text(build_poset(t2)).empty());
}

TEST_CASE("certificate JSON round trip is lossless") {
    const auto& t = table_1m();
    PrattCertificate cert = generate_certificate(t, 47);
    const auto j = certificate_to_json(cert);
    PrattCertificate back = certificate_from_json(nlohmann::json::parse(j.dump()));
    REQUIRE(verify_certificate(back));
    REQUIRE(certificate_to_json(back).dump() == j.dump());

    PrattCertificate base = generate_certificate(t, 2);
    REQUIRE(certificate_to_json(base).dump() == R"({"n":2,"witness":null,"factors":[]})");
}

TEST_CASE("certificate parse errors") {
    REQUIRE_THROWS_AS(parse_certificate("{"), parse_error);
    REQUIRE_THROWS_AS(parse_certificate(R"({"n":2})"), parse_error);
    REQUIRE_THROWS_AS(parse_certificate(R"({"n":-5,"witness":null,"factors":[]})"), parse_error);
    REQUIRE_THROWS_AS(parse_certificate(R"({"n":7,"witness":"x","factors":[]})"), parse_error);
    REQUIRE_THROWS_AS(parse_certificate(R"({"n":7,"witness":3,"factors":[{}]})"), parse_error);
}

TEST_CASE("stats CSV shape and determinism") {
    PrimeTreeCache cache(table_1m());
    SweepResult s = conjecture_sweep(cache, 2, 50);

    std::ostringstream out;
    write_stats_csv(out, s);
    const std::string text = out.str();

    std::istringstream lines(text);
    std::string line;
    REQUIRE(std::getline(lines, line));
    REQUIRE(line == "p,ln_p,deg_t,w,W,depth");
    REQUIRE(std::getline(lines, line));
    REQUIRE(line == "2,0.693147,1,0,0,1");
    REQUIRE(std::getline(lines, line));
    REQUIRE(line == "3,1.09861,2,1,1,2");

    // 15 data rows + header + two report comments
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 18);
    REQUIRE(text.find("# slope=") != std::string::npos);
    REQUIRE(text.find("# pearson_r=") != std::string::npos);
    REQUIRE(text.find("47,3.85015,9,2,2,5\n") != std::string::npos);

    std::ostringstream again;
    write_stats_csv(again, conjecture_sweep(cache, 2, 50));
    REQUIRE(again.str() == text);
}

TEST_CASE("single-row CSV report values") {
    PrimeTreeCache cache(table_1m());
    std::ostringstream out;
    write_stats_csv(out, conjecture_sweep(cache, 2, 2));
    const std::string text = out.str();
    REQUIRE(text.find("# slope=1.442695\n") != std::string::npos);
    REQUIRE(text.find("# pearson_r=0.000000\n") != std::string::npos);
}
