#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dyndist/complexity.hpp"
#include "dyndist/errors.hpp"
#include "dyndist/rng.hpp"

using namespace dyndist;
using namespace dyndist::complexity;

TEST_CASE("omega(1,1,k) anchor values") {
    const OmegaTable& t = OmegaTable::builtin();
    CHECK(t.omega11(1.0) == doctest::Approx(2.3728639).epsilon(1e-4));
    CHECK(t.omega11(0.0) == 2.0);
    CHECK(t.omega11(0.3) == 2.0);  // below the dual exponent
    CHECK(t.omega11(0.5) == doctest::Approx(2.044183).epsilon(1e-9));
}

TEST_CASE("omega(a,b,c) routine") {
    const OmegaTable& t = OmegaTable::builtin();
    // Square case scales linearly.
    CHECK(t.omega(0.5, 0.5, 0.5) ==
          doctest::Approx(0.5 * t.omega11(1.0)).epsilon(1e-12));
    // Degenerate dimensions.
    CHECK(t.omega(0.7, 0.0, 0.0) == doctest::Approx(0.7));
    CHECK(t.omega(0.7, 0.3, 0.0) == doctest::Approx(1.0));
    // Known rectangular value.
    CHECK(t.omega(1.0, 0.5, 1.0) == doctest::Approx(2.044183).epsilon(1e-6));
}

TEST_CASE("omega is symmetric in its arguments") {
    const OmegaTable& t = OmegaTable::builtin();
    SplitMix64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const double a = rng.unit(), b = rng.unit(), c = rng.unit();
        const double v = t.omega(a, b, c);
        CHECK(t.omega(b, a, c) == doctest::Approx(v).epsilon(1e-12));
        CHECK(t.omega(c, b, a) == doctest::Approx(v).epsilon(1e-12));
        CHECK(t.omega(b, c, a) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("splitting rule: omega(1,1,c+d) <= omega(1,1,c) + d") {
    const OmegaTable& t = OmegaTable::builtin();
    SplitMix64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const double c = 2.0 * rng.unit();
        const double d = 2.0 * rng.unit();
        CHECK(t.omega11(c + d) <= t.omega11(c) + d + 1e-9);
    }
}

TEST_CASE("omega is monotone and clamped below") {
    const OmegaTable& t = OmegaTable::builtin();
    double prev = 0.0;
    for (double k = 0.0; k <= 6.0; k += 0.01) {
        const double v = t.omega11(k);
        CHECK(v >= std::max(2.0, 1.0 + k) - 1e-12);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("balance reproduces every headline exponent within 0.005") {
    for (const auto& h : headline_exponents(OmegaTable::builtin())) {
        INFO(h.name, ": got ", h.value, " want ", h.target);
        CHECK(std::abs(h.value - h.target) <= 0.005);
    }
}

TEST_CASE("documented balance points") {
    // SSSP balances near s ~ 0.248, mu ~ 0.202; explicit APSP at s = 0.5,
    // mu = 0.
    const ModeParams sssp = balanced_sssp();
    CHECK(sssp.s == doctest::Approx(0.248).epsilon(0.05));
    CHECK(sssp.mu == doctest::Approx(0.202).epsilon(0.08));
    const ModeParams diam = balanced_diameter15();
    CHECK(diam.s == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("table file format: parse, comments, errors") {
    const OmegaTable t = OmegaTable::parse(
        "# comment line\n"
        "0.0 2.0\n"
        "1.0 2.4  # trailing comment\n"
        "\n"
        "2.0 3.3\n");
    CHECK(t.omega11(0.5) == doctest::Approx(2.2));
    CHECK(t.omega11(1.5) == doctest::Approx(2.85));
    // Beyond the table: last knot + (k - last k).
    CHECK(t.omega11(3.0) == doctest::Approx(4.3));

    CHECK_THROWS_AS(OmegaTable::parse("0.0\n"), ParseError);
    CHECK_THROWS_AS(OmegaTable::parse("# nothing\n"), ConfigError);
    CHECK_THROWS_AS(OmegaTable::parse("0 2\n0 2.1\n"), ConfigError);
    CHECK_THROWS_AS(OmegaTable::parse("0 3\n1 2\n"), ConfigError);
}

TEST_CASE("builtin table round-trips through the text format") {
    std::string text;
    for (const auto& [k, w] : OmegaTable::builtin().knots())
        text += std::to_string(k) + " " + std::to_string(w) + "\n";
    const OmegaTable t = OmegaTable::parse(text);
    SplitMix64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const double k = 5.0 * rng.unit();
        CHECK(t.omega11(k) ==
              doctest::Approx(OmegaTable::builtin().omega11(k)).epsilon(1e-5));
    }
}

TEST_CASE("balance is deterministic") {
    const auto a = headline_exponents(OmegaTable::builtin());
    const auto b = headline_exponents(OmegaTable::builtin());
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].params == b[i].params);
    }
}
