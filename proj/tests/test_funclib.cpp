#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "fwc/funclib.hpp"

using namespace fwc;
using namespace fwc::funclib;

TEST_CASE("eval basics") {
    SECTION("norm on F_{q^2} sends 0 to 0") {
        FieldTower t(3, 1, 2);
        REQUIRE(eval(t, FuncSpec::norm(), 0) == 0);
    }
    SECTION("trace of square equals square of trace over F_2") {
        FieldTower t(2, 1, 4);
        FuncSpec tr = FuncSpec::trace(), trsq = FuncSpec::trace_of_square();
        for (std::uint64_t x = 0; x < t.Q(); ++x) {
            std::uint32_t a = eval(t, tr, static_cast<std::uint32_t>(x));
            REQUIRE(eval(t, trsq, static_cast<std::uint32_t>(x)) ==
                    t.mul(Level::mid, a, a));
        }
    }
    SECTION("defining-set count for trace + norm at q = 2, m = 2 is q^3") {
        FieldTower t(2, 1, 2);
        auto f = value_table(t, FuncSpec::trace());
        auto g = value_table(t, FuncSpec::norm());
        int count = 0;
        for (std::uint64_t x = 0; x < t.Q(); ++x)
            for (std::uint64_t y = 0; y < t.Q(); ++y)
                if (t.add(Level::mid, f[x], g[y]) == 0) ++count;
        REQUIRE(count == 8);
    }
}

TEST_CASE("walsh spectra") {
    SECTION("linear Boolean function: one peak of magnitude 2^m") {
        FieldTower t(2, 1, 5);
        auto ws = walsh_spectrum(t, FuncSpec::trace());
        REQUIRE_FALSE(ws.vectorial);
        REQUIRE(ws.histogram.at(32) == 1);
        REQUIRE(ws.histogram.at(0) == 31);
    }
    SECTION("Gold monomial x^3 on F_{2^5}: vectorial values in {0, +-8}") {
        FieldTower t(2, 1, 5);
        auto ws = walsh_spectrum(t, FuncSpec::trace_of_monomial(3));
        REQUIRE(ws.vectorial);
        for (const auto& [v, cnt] : ws.histogram)
            REQUIRE((v == 0 || v == 8 || v == -8));
    }
    SECTION("Maiorana-McFarland bent on F_{2^4}: all |W| = 4") {
        FieldTower t(2, 1, 4);
        auto ws = walsh_spectrum(t, FuncSpec::bent_mm());
        for (const auto& [v, cnt] : ws.histogram) REQUIRE((v == 4 || v == -4));
    }
    SECTION("fast transform matches direct summation") {
        for (std::uint32_t m : {2u, 3u, 4u, 5u, 6u}) {
            FieldTower t(2, 1, m);
            auto g = value_table(t, FuncSpec::trace_of_monomial(3));
            REQUIRE(boolean_walsh(t, g) == boolean_walsh_direct(t, g));
        }
    }
    SECTION("Parseval holds for every computed spectrum") {
        FieldTower t(2, 1, 4);
        for (auto f : {FuncSpec::trace(), FuncSpec::trace_of_square(), FuncSpec::norm(),
                       FuncSpec::bent_mm(), FuncSpec::bent_mm(3, 1)})
            REQUIRE(walsh_spectrum(t, f).parseval_ok());
    }
}

TEST_CASE("classification") {
    SECTION("x^3 is almost bent on F_{2^3}") {
        FieldTower t(2, 1, 3);
        REQUIRE(classify(t, FuncSpec::trace_of_monomial(3)) == FuncClass::AlmostBent);
    }
    SECTION("x^3 is not almost bent on F_{2^4} (even m)") {
        FieldTower t(2, 1, 4);
        REQUIRE(classify(t, FuncSpec::trace_of_monomial(3)) != FuncClass::AlmostBent);
    }
    SECTION("the identity is linear") {
        FieldTower t(2, 1, 3);
        REQUIRE(classify(t, FuncSpec::trace_of_monomial(1)) == FuncClass::Linear);
    }
    SECTION("Maiorana-McFarland and its affine variants are bent") {
        for (std::uint32_t m : {2u, 4u, 6u}) {
            FieldTower t(2, 1, m);
            REQUIRE(classify(t, FuncSpec::bent_mm()) == FuncClass::Bent);
            REQUIRE(classify(t, FuncSpec::bent_mm(1, 0)) == FuncClass::Bent);
            REQUIRE(classify(t, FuncSpec::bent_mm(0, 1)) == FuncClass::Bent);
        }
    }
    SECTION("flags are only set by verification") {
        FieldTower t(2, 1, 4);
        FuncSpec f = FuncSpec::bent_mm();
        REQUIRE_FALSE(f.is_bent);
        classify_and_flag(t, f);
        REQUIRE(f.is_bent);
        REQUIRE_FALSE(f.is_almost_bent);
    }
    SECTION("Boolean trace classifies as linear") {
        FieldTower t(2, 1, 4);
        REQUIRE(classify(t, FuncSpec::trace()) == FuncClass::Linear);
    }
}

TEST_CASE("almost bent monomial catalogue") {
    SECTION("m = 3 contains the Gold exponent 3") {
        auto cat = ab_monomial_catalogue(3);
        REQUIRE(std::any_of(cat.begin(), cat.end(), [](const AbMonomial& e) { return e.t == 3; }));
    }
    SECTION("m = 5 contains Kasami 13 and Welch 7") {
        auto cat = ab_monomial_catalogue(5);
        bool k13 = false, w7 = false;
        for (const auto& e : cat) {
            if (e.t == 13) k13 = true;
            if (e.t == 7) w7 = true;
        }
        REQUIRE(k13);
        REQUIRE(w7);
    }
    SECTION("every catalogue entry is a permutation and verifies almost bent") {
        for (std::uint32_t m : {3u, 5u, 7u, 9u}) {
            FieldTower t(2, 1, m);
            for (const auto& e : ab_monomial_catalogue(m)) {
                CAPTURE(m, e.t, e.family);
                REQUIRE(std::gcd(e.t, t.Q() - 1) == 1);
                REQUIRE(classify(t, FuncSpec::trace_of_monomial(e.t)) == FuncClass::AlmostBent);
            }
        }
    }
}

TEST_CASE("spec validation and JSON") {
    FieldTower t3(3, 1, 2);
    REQUIRE_THROWS_AS(eval(t3, FuncSpec::trace_of_monomial(3), 0), spec_error);

    FuncSpec f = FuncSpec::trace_of_monomial(3);
    auto j = f.to_json();
    REQUIRE(j.at("kind") == "TraceOfMonomial");
    REQUIRE(j.at("t") == 3);
    FuncSpec g = FuncSpec::from_json(j);
    REQUIRE(g.kind == FuncKind::TraceOfMonomial);
    REQUIRE(g.t == 3);

    FieldTower t2(2, 1, 2);
    FuncSpec bad{FuncKind::ExplicitTable};
    bad.table = {0, 1};
    REQUIRE_THROWS_AS(eval(t2, bad, 0), spec_error);
}
