// Acceptance suite: one criterion per check, each printed as a PASS/FAIL
// line with its runtime against the stated limit.  All comparisons are
// exact integer equality unless noted (complex character sums use the
// 1e-6 tolerance inside the lemma oracles).
//
// Run all criteria:      acceptance
// Run a single one:      acceptance <index 1..10>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "fwc/verify.hpp"

using namespace fwc;

namespace {

struct Criterion {
    int index;
    std::string summary;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

bool dist_equals(const WeightDistribution& dist, const std::map<std::uint64_t, BigInt>& expect,
                 std::string& why) {
    for (std::size_t w = 1; w < dist.counts.size(); ++w) {
        BigInt want = 0;
        if (auto it = expect.find(w); it != expect.end()) want = it->second;
        if (dist.counts[w] != want) {
            why = "weight " + std::to_string(w) + ": expected " + want.str() + ", got " +
                  dist.counts[w].str();
            return false;
        }
    }
    for (const auto& [w, c] : expect)
        if (w >= dist.counts.size() && c != 0) {
            why = "expected weight " + std::to_string(w) + " beyond length";
            return false;
        }
    return true;
}

bool check_family_codes(const FamilySpec& spec, bool parent_too, std::string& why) {
    auto b = families::prepare(spec);
    LinearCode parent = families::build_code(b);
    const long long W = b.W();
    if (parent_too) {
        auto pr = families::expected_profile(spec, families::CodeKind::parent, W);
        if (!pr.available) {
            why = "missing parent closed form";
            return false;
        }
        auto dist = lincode::weight_distribution(parent);
        if (parent.n() != pr.n || parent.k() != pr.k) {
            why = "parent parameters differ";
            return false;
        }
        if (!dist_equals(dist, pr.weights, why)) {
            why = verify::spec_tag(spec) + " parent: " + why;
            return false;
        }
    }
    LinearCode sub = families::subfield_code(parent);
    LinearCode punc = lincode::puncture(sub, 0);
    for (auto [kind, code] : {std::pair<families::CodeKind, const LinearCode*>{
                                  families::CodeKind::subfield, &sub},
                              {families::CodeKind::punctured, &punc}}) {
        auto pr = families::expected_profile(spec, kind, W);
        if (!pr.available) continue;
        if (code->n() != pr.n || code->k() != pr.k) {
            why = verify::spec_tag(spec) + std::string(families::code_kind_name(kind)) +
                  ": parameters differ";
            return false;
        }
        auto dist = lincode::weight_distribution(*code);
        if (!dist_equals(dist, pr.weights, why)) {
            why = verify::spec_tag(spec) + " " + families::code_kind_name(kind) + ": " + why;
            return false;
        }
    }
    return true;
}

// ----- criterion bodies -----

bool c1(std::string& why) {
    for (auto [q, w1, a1, w2, a2] :
         std::vector<std::tuple<int, int, int, int, int>>{{2, 6, 36, 8, 27}, {3, 24, 504, 27, 224}}) {
        auto b = families::prepare(FamilySpec::make(Family::F1, q, 2));
        auto dist = lincode::weight_distribution(families::build_code(b));
        std::map<std::uint64_t, BigInt> expect{{std::uint64_t(w1), a1}, {std::uint64_t(w2), a2}};
        if (!dist_equals(dist, expect, why)) {
            why = "q=" + std::to_string(q) + ": " + why;
            return false;
        }
    }
    return true;
}

bool c2(std::string& why) {
    for (std::uint64_t q : {2, 3, 4}) {
        auto b = families::prepare(FamilySpec::make(Family::F1, q, 2));
        auto C = families::build_code(b);
        auto dist = lincode::weight_distribution(C);
        const std::uint64_t q3 = q * q * q;
        BigInt qq1 = BigInt(q) * q - 1;
        std::map<std::uint64_t, BigInt> expect{
            {q3 - q, qq1 * (BigInt(q) * q * q * q - q3 + q * q)},
            {q3, qq1 * (q3 + 1)}};
        if (!dist_equals(dist, expect, why)) {
            why = "q=" + std::to_string(q) + ": " + why;
            return false;
        }
        auto bounds = lincode::bound_verdicts(C.n(), C.k(), dist.min_distance(), C.q());
        if (!bounds[0].meets_with_equality) {
            why = "q=" + std::to_string(q) + ": Griesmer equality fails";
            return false;
        }
    }
    return true;
}

const std::vector<std::pair<int, int>> kGrid{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}, {5, 2}};

bool c3(std::string& why) {
    for (auto [q, m] : kGrid) {
        auto spec = FamilySpec::make(Family::F2, q, m);
        auto pr = families::expected_profile(spec, families::CodeKind::parent);
        auto b = families::prepare(spec);
        auto dist = lincode::weight_distribution(families::build_code(b));
        if (!dist_equals(dist, pr.weights, why)) {
            why = "(" + std::to_string(q) + "," + std::to_string(m) + "): " + why;
            return false;
        }
    }
    return true;
}

bool c4(std::string& why) {
    // subfield codes over the grid; F1 applies at the m = 2 rows
    for (auto [q, m] : kGrid) {
        auto spec = FamilySpec::make(Family::F2, q, m);
        auto pr = families::expected_profile(spec, families::CodeKind::subfield);
        auto b = families::prepare(spec);
        LinearCode sub = families::subfield_code(families::build_code(b));
        if (sub.k() != pr.k) {
            why = "F2(" + std::to_string(q) + "," + std::to_string(m) + "): dimension " +
                  std::to_string(sub.k()) + " != " + std::to_string(pr.k);
            return false;
        }
        auto dist = lincode::weight_distribution(sub);
        if (!dist_equals(dist, pr.weights, why)) {
            why = "F2(" + std::to_string(q) + "," + std::to_string(m) + "): " + why;
            return false;
        }
        auto dd = lincode::macwilliams_transform(dist, sub.k());
        std::uint64_t want_d = (q == 2 && m % 2 == 1) ? 4 : 3;
        if (dd.min_distance() != want_d) {
            why = "F2(" + std::to_string(q) + "," + std::to_string(m) + "): dual distance " +
                  std::to_string(dd.min_distance()) + " != " + std::to_string(want_d);
            return false;
        }
    }
    for (std::uint64_t q : {2, 3, 4, 5}) {
        auto spec = FamilySpec::make(Family::F1, q, 2);
        auto pr = families::expected_profile(spec, families::CodeKind::subfield);
        auto b = families::prepare(spec);
        LinearCode sub = families::subfield_code(families::build_code(b));
        auto dist = lincode::weight_distribution(sub);
        if (!dist_equals(dist, pr.weights, why)) {
            why = "F1(q=" + std::to_string(q) + "): " + why;
            return false;
        }
        auto dd = lincode::macwilliams_transform(dist, sub.k());
        if (dd.min_distance() != 3) {
            why = "F1(q=" + std::to_string(q) + "): dual distance != 3";
            return false;
        }
    }
    return true;
}

bool c5(std::string& why) {
    for (std::uint64_t q : {2, 3, 4, 5}) {
        auto spec = FamilySpec::make(Family::F1, q, 2);
        auto pr = families::expected_profile(spec, families::CodeKind::punctured);
        auto b = families::prepare(spec);
        auto P = families::punctured_subfield_code(b);
        auto dist = lincode::weight_distribution(P);
        const std::uint64_t q3 = q * q * q;
        if (P.n() != q3 || P.k() != 5 || dist.min_distance() != q3 - q * q - q) {
            why = "F1(q=" + std::to_string(q) + "): punctured parameters differ";
            return false;
        }
        if (!dist_equals(dist, pr.weights, why)) return false;
    }
    for (std::uint32_t m : {2, 3, 4}) {
        auto spec = FamilySpec::make(Family::F2, 2, m);
        auto b = families::prepare(spec);
        auto P = families::punctured_subfield_code(b);
        auto dist = lincode::weight_distribution(P);
        const std::uint64_t n = std::uint64_t{1} << (2 * m - 1);
        if (P.n() != n || P.k() != 2 * m || dist.min_distance() != n / 2) {
            why = "F2(m=" + std::to_string(m) + "): punctured parameters differ";
            return false;
        }
        auto bounds = lincode::bound_verdicts(P.n(), P.k(), dist.min_distance(), 2);
        if (!bounds[0].meets_with_equality) {
            why = "F2(m=" + std::to_string(m) + "): Griesmer equality fails";
            return false;
        }
    }
    // the named instances
    struct Named {
        Family fam;
        int q, m;
        bool punctured;
        std::uint64_t n, k, d;
    };
    for (auto inst : std::vector<Named>{{Family::F1, 2, 2, true, 8, 5, 2},
                                        {Family::F2, 2, 2, true, 8, 4, 4},
                                        {Family::F2, 2, 2, false, 9, 4, 4},
                                        {Family::F2, 2, 3, true, 32, 6, 16},
                                        {Family::F2, 2, 4, true, 128, 8, 64},
                                        {Family::F2, 2, 4, false, 129, 8, 64}}) {
        auto b = families::prepare(FamilySpec::make(inst.fam, inst.q, inst.m));
        LinearCode sub = families::subfield_code(families::build_code(b));
        LinearCode code = inst.punctured ? lincode::puncture(sub, 0) : sub;
        auto dist = lincode::weight_distribution(code);
        if (code.n() != inst.n || code.k() != inst.k || dist.min_distance() != inst.d) {
            why = "named instance [" + std::to_string(inst.n) + "," + std::to_string(inst.k) +
                  "," + std::to_string(inst.d) + "] not reproduced";
            return false;
        }
    }
    return true;
}

bool c6(std::string& why) {
    // F3 with Gold and Welch exponents
    for (std::uint32_t m : {3, 5}) {
        for (std::uint64_t t : {std::uint64_t{3}, (std::uint64_t{1} << ((m - 1) / 2)) + 3}) {
            auto spec = FamilySpec::make(Family::F3, 2, m);
            spec.g = FuncSpec::trace_of_monomial(t);
            if (!check_family_codes(spec, false, why)) return false;
        }
    }
    // F4 with two distinct catalogue monomials
    {
        auto spec = FamilySpec::make(Family::F4, 2, 3);
        spec.f = FuncSpec::trace_of_monomial(3);
        spec.g = FuncSpec::trace_of_monomial(5);
        auto b = families::prepare(spec);
        if (b.W() != 0) {
            why = "F4: W != 0 for permutation monomials";
            return false;
        }
        if (!check_family_codes(spec, false, why)) return false;
        auto P = families::punctured_subfield_code(b);
        if (P.n() != 32 || P.k() != 7 ||
            lincode::weight_distribution(P).min_distance() != 12) {
            why = "F4: [32,7,12] not reproduced";
            return false;
        }
    }
    // F5 and F6 with Maiorana-McFarland bents, both signs of W for F6
    for (std::uint32_t m : {2, 4}) {
        if (!check_family_codes(FamilySpec::make(Family::F5, 2, m), false, why)) return false;
        for (bool neg : {false, true}) {
            auto spec = FamilySpec::make(Family::F6, 2, m);
            if (neg) spec.g = FuncSpec::bent_mm(0, 1);
            auto b = families::prepare(spec);
            long long wantW = neg ? -(1LL << m) : (1LL << m);
            if (b.W() != wantW) {
                why = "F6(m=" + std::to_string(m) + "): W = " + std::to_string(b.W()) +
                      ", expected " + std::to_string(wantW);
                return false;
            }
            if (!check_family_codes(spec, false, why)) return false;
        }
    }
    return true;
}

bool c7(std::string& why) {
    for (const auto& rep : charsum::run_all_grids(5, 3))
        if (!rep.ok()) {
            why = rep.lemma + " failed at " + rep.witnesses.front();
            return false;
        }
    return true;
}

bool c8(std::string& why) {
    auto expect_all = [&](const std::vector<designs::DesignCheck>& checks,
                          bool allow_skip) -> bool {
        for (const auto& c : checks) {
            if (c.status == "fail") {
                why = c.name + ": " + c.detail + " " + c.data.dump();
                return false;
            }
            if (c.status == "skip" && !allow_skip) {
                why = c.name + ": unexpected skip";
                return false;
            }
        }
        return true;
    };
    for (auto q : {2, 3})
        if (!expect_all(designs::verify_designs_f1(q), false)) return false;
    // lambda = 5 at q = 2; Steiner complements S(2,3,9) and S(2,4,28)
    {
        auto b = families::prepare(FamilySpec::make(Family::F1, 2, 2));
        auto D = designs::supports_of_weight(families::build_code(b), 6);
        auto v = designs::verify_t_design(D, 2);
        if (!v.is_design || v.lambda != 5) {
            why = "q=2 primal design lambda != 5";
            return false;
        }
        auto comp = designs::complement_design(D);
        auto vc = designs::verify_t_design(comp, 2);
        if (!vc.is_design || vc.lambda != 1 || comp.kappa != 3) {
            why = "S(2,3,9) not verified";
            return false;
        }
    }
    {
        auto b = families::prepare(FamilySpec::make(Family::F1, 3, 2));
        auto comp = designs::complement_design(
            designs::supports_of_weight(families::build_code(b), 24));
        auto vc = designs::verify_t_design(comp, 2);
        if (!vc.is_design || vc.lambda != 1 || comp.kappa != 4) {
            why = "S(2,4,28) not verified";
            return false;
        }
    }
    if (!expect_all(designs::verify_designs_f2(2), false)) return false;
    if (!expect_all(designs::verify_designs_f2(3), true)) return false;  // dual side skipped
    for (bool neg : {false, true})
        if (!expect_all(designs::verify_designs_f6(2, neg), neg)) return false;
    return true;
}

bool c9(std::string& why) {
    // MacWilliams vs brute-force duals across the whole suite
    auto led = verify::run_cross_validation();
    if (!led.all_ok()) {
        why = "MacWilliams/brute dual disagreement";
        return false;
    }
    // subfield-vs-trace, basis invariance, hyperplane identity per family
    for (auto spec : {FamilySpec::make(Family::F1, 2, 2), FamilySpec::make(Family::F2, 2, 2),
                      FamilySpec::make(Family::F3, 2, 3), FamilySpec::make(Family::F4, 2, 3),
                      FamilySpec::make(Family::F5, 2, 2), FamilySpec::make(Family::F6, 2, 2)}) {
        auto rep = families::verify_family(spec);
        if (!rep.trace_matches_subfield) {
            why = std::string(family_name(spec.family)) + ": trace code != subfield code";
            return false;
        }
        if (!rep.basis_invariance_ok) {
            why = std::string(family_name(spec.family)) + ": basis invariance fails";
            return false;
        }
        if (!rep.hyperplane_ok) {
            why = std::string(family_name(spec.family)) + ": hyperplane identity fails";
            return false;
        }
    }
    return true;
}

bool c10(std::string& why) {
    auto led = verify::run_all();
    if (!led.all_ok()) {
        why = "full ledger has failures";
        return false;
    }
    bool best_known = false, f6_dual = false, f2_dual = false;
    for (const auto& e : led.entries) {
        if (e.status != "skip") continue;
        if (e.check == "best_known_parameters") best_known = true;
        if (e.check.find("f6_punctured_dual_2designs(m>=3)") != std::string::npos) f6_dual = true;
        if (e.check.find("f2_punctured_dual_3designs(m=3)") != std::string::npos) f2_dual = true;
    }
    if (!best_known || !f6_dual || !f2_dual) {
        why = "expected explicit skip entries missing from the ledger";
        return false;
    }
    for (const auto& e : led.entries)
        if (e.status == "pass" && (e.check == "best_known_parameters" ||
                                   e.check.find("(m>=3)") != std::string::npos)) {
            why = "a not-desk-verifiable claim was reported as a pass";
            return false;
        }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria{
        {1, "exact enumerators of the first family at q=2,3", 1.0, c1},
        {2, "first-family general form and Griesmer equality, q=2,3,4", 30.0, c2},
        {3, "second-family parent tables over the (q,m) grid", 60.0, c3},
        {4, "subfield tables, dimension drop, dual distances over the grid", 120.0, c4},
        {5, "punctured tables and the named optimal instances", 600.0, c5},
        {6, "almost-bent/bent family tables with W recorded", 600.0, c6},
        {7, "character-sum lemma grids (q <= 5, m <= 3)", 60.0, c7},
        {8, "design claims: 2/3-designs, Steiner systems, dual sides", 300.0, c8},
        {9, "cross-validation: duals, trace/subfield, bases, hyperplanes", 600.0, c9},
        {10, "not-desk-verifiable claims appear as explicit skips", 600.0, c10},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (auto& c : criteria) {
        if (only && c.index != only) continue;
        std::string why;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) {
            ok = false;
            why += (why.empty() ? "" : "; ") + std::string("time limit exceeded");
        }
        std::printf("[%s] C%-2d %s (%.2fs < %.0fs)%s%s\n", ok ? "PASS" : "FAIL", c.index,
                    c.summary.c_str(), secs, c.limit_seconds, why.empty() ? "" : " -- ",
                    why.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
