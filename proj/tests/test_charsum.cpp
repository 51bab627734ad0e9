#include <catch2/catch_amalgamated.hpp>

#include "fwc/charsum.hpp"

using namespace fwc;
using namespace fwc::charsum;

TEST_CASE("additive character orthogonality") {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 9ull}) {
        auto rep = check_additive_orthogonality(q);
        CAPTURE(q, rep.witnesses);
        REQUIRE(rep.ok());
    }
    // trivial character is identically 1
    FieldTower t(3, 1, 1);
    AdditiveChar chi(t, Level::top);
    for (std::uint32_t x = 0; x < 3; ++x) REQUIRE(std::abs(chi.at(0, x) - Cx(1, 0)) < kTol);
}

TEST_CASE("quadratic Gauss sums match the closed form") {
    SECTION("q = 3: G = i*sqrt(3)") {
        FieldTower t(3, 1, 1);
        AdditiveChar chi(t, Level::top);
        Cx g = 0;
        for (std::uint32_t x = 1; x < 3; ++x)
            g += double(t.quadratic_character(Level::top, x)) * chi(x);
        REQUIRE(std::abs(g - Cx(0, std::sqrt(3.0))) < kTol);
    }
    SECTION("q = 5: G = sqrt(5)") {
        FieldTower t(5, 1, 1);
        AdditiveChar chi(t, Level::top);
        Cx g = 0;
        for (std::uint32_t x = 1; x < 5; ++x)
            g += double(t.quadratic_character(Level::top, x)) * chi(x);
        REQUIRE(std::abs(g - Cx(std::sqrt(5.0), 0)) < kTol);
    }
    SECTION("prime powers including q = 9") {
        for (std::uint64_t q : {3ull, 5ull, 7ull, 9ull, 25ull, 27ull}) {
            auto rep = check_gauss_sum(q);
            CAPTURE(q, rep.max_err);
            REQUIRE(rep.ok());
        }
    }
}

TEST_CASE("quadratic Weil sums") {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
        auto rep = check_weil_quadratic(q);
        CAPTURE(q, rep.witnesses);
        REQUIRE(rep.ok());
    }
}

TEST_CASE("eta sums with quadratic arguments") {
    SECTION("named instances") {
        // q=3, f=c^2: d=0, sum = (q-1) eta(1) = 2
        FieldTower t3(3, 1, 1);
        long long s = 0;
        for (std::uint32_t c = 0; c < 3; ++c)
            s += t3.quadratic_character(Level::top, t3.mul(Level::top, c, c));
        REQUIRE(s == 2);
        // q=5, f=c^2+1: d=-4 != 0, sum = -eta(1) = -1
        FieldTower t5(5, 1, 1);
        s = 0;
        for (std::uint32_t c = 0; c < 5; ++c)
            s += t5.quadratic_character(Level::top, t5.add(Level::top, t5.mul(Level::top, c, c), 1));
        REQUIRE(s == -1);
        // q=7, f=3c^2: d=0, sum = 6 eta(3)
        FieldTower t7(7, 1, 1);
        s = 0;
        for (std::uint32_t c = 0; c < 7; ++c)
            s += t7.quadratic_character(Level::top, t7.mul(Level::top, 3, t7.mul(Level::top, c, c)));
        REQUIRE(s == 6 * t7.quadratic_character(Level::top, 3));
    }
    SECTION("full grids") {
        for (std::uint64_t q : {3ull, 5ull, 9ull}) REQUIRE(check_eta_sum(q).ok());
    }
}

TEST_CASE("quadratic root counts") {
    SECTION("p = 2, a1 = 0 has exactly one root") {
        FieldTower t(2, 2, 1);
        int n = 0;
        for (std::uint32_t x = 0; x < 4; ++x)
            if (t.add(Level::top, t.mul(Level::top, x, x), 3) == 0) ++n;
        REQUIRE(n == 1);
    }
    SECTION("full grids including F_4 trace criterion and odd discriminants") {
        for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 8ull, 9ull}) {
            auto rep = check_quadratic_root_count(q);
            CAPTURE(q, rep.witnesses);
            REQUIRE(rep.ok());
        }
    }
}

TEST_CASE("trace/norm fiber counts on F_{q^2}") {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
        REQUIRE(check_count_n1(q).ok());
        REQUIRE(check_count_n2(q).ok());
    }
}

TEST_CASE("quadratic trace counts N3") {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull})
        for (std::uint32_t m : {2u, 3u}) {
            auto rep = check_count_n3(q, m);
            CAPTURE(q, m, rep.witnesses);
            REQUIRE(rep.ok());
        }
}

TEST_CASE("Omega exponential sums") {
    SECTION("even q: c outside F_q^* gives zero") {
        FieldTower t(2, 1, 3);
        Cx v = omega_brute(t, 1, 1, 2);  // c = 2 encodes x, not in F_2
        REQUIRE(std::abs(v) < kTol);
    }
    SECTION("full grids") {
        for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull})
            for (std::uint32_t m : {2u, 3u}) {
                auto rep = check_omega(q, m);
                CAPTURE(q, m, rep.witnesses);
                REQUIRE(rep.ok());
            }
    }
}

TEST_CASE("Upsilon sums for the two closed-form pairs") {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
        auto rep = check_upsilon_f1(q);
        CAPTURE(q, rep.witnesses);
        REQUIRE(rep.ok());
    }
    for (std::uint64_t q : {2ull, 3ull})
        for (std::uint32_t m : {2u, 3u}) {
            auto rep = check_upsilon_f2(q, m);
            CAPTURE(q, m, rep.witnesses);
            REQUIRE(rep.ok());
        }
}

TEST_CASE("characteristic-2 sums are near-integer reals") {
    FieldTower t(2, 1, 3);
    auto ftab = funclib::value_table(t, FuncSpec::trace());
    auto gtab = funclib::value_table(t, FuncSpec::trace_of_square());
    auto Sf = upsilon_inner_sums(t, ftab);
    for (const auto& row : Sf)
        for (const auto& v : row) {
            REQUIRE(std::abs(v.imag()) < 1e-9);
            REQUIRE(std::abs(v.real() - std::round(v.real())) < 1e-9);
        }
    (void)gtab;
}

TEST_CASE("defining-set size matches the character-sum length formula") {
    FieldTower t(2, 1, 2);
    auto ftab = funclib::value_table(t, FuncSpec::trace());
    auto gtab = funclib::value_table(t, FuncSpec::norm());
    std::uint64_t observed = 0;
    for (std::uint64_t x = 0; x < t.Q(); ++x)
        for (std::uint64_t y = 0; y < t.Q(); ++y)
            if (t.add(Level::mid, ftab[x], gtab[y]) == 0) ++observed;
    REQUIRE(observed == 8);
    REQUIRE(check_length_formula(t, ftab, gtab, observed, "trace+norm q=2").ok());
}

TEST_CASE("the gate refuses nothing when all grids pass") {
    REQUIRE_NOTHROW(require_all_grids(3, 2));
}
