#ifndef FWC_FAMILIES_HPP
#define FWC_FAMILIES_HPP

// The six code constructions: defining set D = {(x,y) : f(x)+g(y) = 0},
// the 3 x (1+#D) generator matrix, q-ary subfield codes by basis
// expansion and by trace representation, punctured subfield codes, the
// closed-form expected parameters and weight distributions for every
// construction that has them, and a verifier that diffs brute-force
// enumeration against the closed forms.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fwc/charsum.hpp"
#include "fwc/funclib.hpp"
#include "fwc/lincode.hpp"

namespace fwc {

enum class Family { F1, F2, F3, F4, F5, F6 };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::F1: return "F1";
        case Family::F2: return "F2";
        case Family::F3: return "F3";
        case Family::F4: return "F4";
        case Family::F5: return "F5";
        default: return "F6";
    }
}

inline Family family_from_name(const std::string& s) {
    for (Family f : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5, Family::F6})
        if (s == family_name(f)) return f;
    throw spec_error("unknown family: " + s);
}

// Which pair (f, g) a family uses:
//   F1: trace + norm (m = 2)          F2: trace + trace of square
//   F3: trace + trace of almost bent  F4: two distinct almost bent traces
//   F5: trace + bent                  F6: two distinct bents
struct FamilySpec {
    Family family = Family::F1;
    std::uint64_t q = 2;
    std::uint32_t m = 2;
    FuncSpec f, g;

    static FamilySpec make(Family fam, std::uint64_t q, std::uint32_t m) {
        FamilySpec s;
        s.family = fam;
        s.q = q;
        s.m = m;
        switch (fam) {
            case Family::F1:
                s.f = FuncSpec::trace();
                s.g = FuncSpec::norm();
                break;
            case Family::F2:
                s.f = FuncSpec::trace();
                s.g = FuncSpec::trace_of_square();
                break;
            case Family::F3:
                s.f = FuncSpec::trace();
                s.g = FuncSpec::trace_of_monomial(3);
                break;
            case Family::F4:
                s.f = FuncSpec::trace_of_monomial(3);
                s.g = FuncSpec::trace_of_monomial(5);
                break;
            case Family::F5:
                s.f = FuncSpec::trace();
                s.g = FuncSpec::bent_mm();
                break;
            case Family::F6:
                s.f = FuncSpec::bent_mm();
                s.g = FuncSpec::bent_mm(1, 0);
                break;
        }
        return s;
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"family", family_name(family)},
                              {"q", q},
                              {"m", m},
                              {"f", f.to_json()},
                              {"g", g.to_json()}};
    }

    static FamilySpec from_json(const nlohmann::json& j) {
        FamilySpec s = make(family_from_name(j.at("family").get<std::string>()),
                            j.at("q").get<std::uint64_t>(), j.at("m").get<std::uint32_t>());
        if (j.contains("f")) s.f = FuncSpec::from_json(j.at("f"));
        if (j.contains("g")) s.g = FuncSpec::from_json(j.at("g"));
        return s;
    }
};

namespace families {

inline std::pair<std::uint32_t, std::uint32_t> factor_q(std::uint64_t q) {
    for (std::uint32_t p = 2; p <= q; ++p) {
        if (q % p) continue;
        std::uint32_t l = 0;
        std::uint64_t v = q;
        while (v % p == 0) {
            v /= p;
            ++l;
        }
        if (v != 1) throw spec_error("q must be a prime power");
        return {p, l};
    }
    throw spec_error("q must be at least 2");
}

// A validated spec with its fields, value tables and defining set.
struct FamilyBuild {
    FamilySpec spec;
    std::shared_ptr<const FieldTower> tower;     // F_p < F_q < F_{q^m}
    std::shared_ptr<const FieldTower> subtower;  // F_q as its own field
    std::vector<std::uint32_t> ftab, gtab;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> defining;  // lexicographic (x, y)
    long long walsh_f0 = 0, walsh_g0 = 0;  // sum_x (-1)^{f(x)}, q = 2 families only

    long long W() const { return walsh_f0 * walsh_g0; }
};

inline FamilyBuild prepare(const FamilySpec& spec) {
    auto [p, l] = factor_q(spec.q);
    FamilyBuild b;
    b.spec = spec;

    switch (spec.family) {
        case Family::F1:
            if (spec.m != 2) throw spec_error("family F1 fixes m = 2");
            if (spec.f.kind != FuncKind::Trace || spec.g.kind != FuncKind::Norm)
                throw spec_error("family F1 uses trace and norm");
            break;
        case Family::F2:
            if (spec.m < 2) throw spec_error("family F2 needs m >= 2");
            if (spec.f.kind != FuncKind::Trace || spec.g.kind != FuncKind::TraceOfSquare)
                throw spec_error("family F2 uses trace and trace of square");
            break;
        case Family::F3:
        case Family::F4:
            if (spec.q != 2 || spec.m % 2 == 0 || spec.m < 3)
                throw spec_error("families F3/F4 need q = 2 and odd m >= 3");
            break;
        case Family::F5:
        case Family::F6:
            if (spec.q != 2 || spec.m % 2 != 0)
                throw spec_error("families F5/F6 need q = 2 and even m");
            break;
    }

    b.tower = std::make_shared<FieldTower>(p, l, spec.m);
    b.subtower = std::make_shared<FieldTower>(p, l, 1);
    b.ftab = funclib::value_table(*b.tower, spec.f);
    b.gtab = funclib::value_table(*b.tower, spec.g);

    // classification requirements are verified, never assumed
    auto require_class = [&](const FuncSpec& fs, FuncClass want, const char* which) {
        if (funclib::classify(*b.tower, fs) != want)
            throw spec_error(std::string(which) + " does not verify as " + func_class_name(want));
    };
    if (spec.family == Family::F3) require_class(spec.g, FuncClass::AlmostBent, "g");
    if (spec.family == Family::F4) {
        require_class(spec.f, FuncClass::AlmostBent, "f");
        require_class(spec.g, FuncClass::AlmostBent, "g");
        // the distinct-pair policy applies to the almost bent functions
        // themselves; their traces may still coincide pointwise
        if (funclib::vectorial_table(*b.tower, spec.f) == funclib::vectorial_table(*b.tower, spec.g))
            throw spec_error("family F4 needs two different almost bent functions");
    }
    if (spec.family == Family::F5) require_class(spec.g, FuncClass::Bent, "g");
    if (spec.family == Family::F6) {
        require_class(spec.f, FuncClass::Bent, "f");
        require_class(spec.g, FuncClass::Bent, "g");
        if (b.ftab == b.gtab) throw spec_error("family F6 needs two different functions");
    }

    const std::uint64_t Q = b.tower->Q();
    for (std::uint64_t x = 0; x < Q; ++x)
        for (std::uint64_t y = 0; y < Q; ++y)
            if (b.tower->add(Level::mid, b.ftab[x], b.gtab[y]) == 0)
                b.defining.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));

    if (spec.q == 2) {
        for (std::uint64_t x = 0; x < Q; ++x) {
            b.walsh_f0 += b.ftab[x] ? -1 : 1;
            b.walsh_g0 += b.gtab[x] ? -1 : 1;
        }
    }
    return b;
}

// generator: column (0,1,0)^T at index 0, then (1,x,y)^T over the
// defining set in canonical order
inline LinearCode build_code(const FamilyBuild& b) {
    const std::size_t n = 1 + b.defining.size();
    Matrix g(3, std::vector<std::uint32_t>(n, 0));
    g[1][0] = 1;
    for (std::size_t j = 0; j < b.defining.size(); ++j) {
        g[0][j + 1] = 1;
        g[1][j + 1] = b.defining[j].first;
        g[2][j + 1] = b.defining[j].second;
    }
    return LinearCode(b.tower, std::move(g));
}

// ----- subfield code by basis expansion -----

// polynomial basis 1, y, y^2, ...
inline std::vector<std::uint32_t> polynomial_basis(const FieldTower& tw) {
    std::vector<std::uint32_t> basis(tw.m());
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < tw.m(); ++i, v *= tw.q())
        basis[i] = static_cast<std::uint32_t>(v);
    return basis;
}

// inverse of an m x m matrix over F_q (entries are mid encodings)
inline Matrix invert_mid_matrix(const FieldTower& sub, Matrix M) {
    const std::size_t m = M.size();
    Matrix aug = std::move(M);
    for (std::size_t i = 0; i < m; ++i) {
        aug[i].resize(2 * m, 0);
        aug[i][m + i] = 1;
    }
    auto rr = rank_and_rref(sub, aug);
    if (rr.rows.size() != m) throw domain_error("basis is linearly dependent");
    for (std::size_t i = 0; i < m; ++i)
        if (rr.pivots[i] != i) throw domain_error("basis is linearly dependent");
    Matrix inv(m, std::vector<std::uint32_t>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) inv[i][j] = rr.rows[i][m + j];
    return inv;
}

// Expand each entry of the generator into its coordinate column over the
// basis; the result generates the q-ary subfield code.
inline LinearCode subfield_code(const LinearCode& C, const std::vector<std::uint32_t>& basis) {
    const FieldTower& tw = C.field();
    const std::uint32_t m = tw.m();
    if (basis.size() != m) throw domain_error("basis must have m elements");
    auto sub = std::make_shared<FieldTower>(tw.p(), tw.l(), 1);

    // change of basis: columns are the polynomial coordinates of basis elts
    Matrix M(m, std::vector<std::uint32_t>(m));
    for (std::uint32_t t = 0; t < m; ++t)
        for (std::uint32_t i = 0; i < m; ++i) M[i][t] = tw.top_coord(basis[t], i);
    Matrix Minv = invert_mid_matrix(*sub, M);

    // coords(x) = Minv * polycoords(x), precomputed per field element
    std::vector<std::vector<std::uint32_t>> coords(tw.Q(), std::vector<std::uint32_t>(m));
    for (std::uint64_t x = 0; x < tw.Q(); ++x)
        for (std::uint32_t i = 0; i < m; ++i) {
            std::uint32_t acc = 0;
            for (std::uint32_t j = 0; j < m; ++j)
                acc = sub->add(Level::top, acc,
                               sub->mul(Level::top, Minv[i][j],
                                        tw.top_coord(static_cast<std::uint32_t>(x), j)));
            coords[x][i] = acc;
        }

    const auto& g = C.generator();
    Matrix out;
    out.reserve(g.size() * m);
    for (const auto& row : g)
        for (std::uint32_t i = 0; i < m; ++i) {
            std::vector<std::uint32_t> r(C.n());
            for (std::size_t j = 0; j < C.n(); ++j) r[j] = coords[row[j]][i];
            out.push_back(std::move(r));
        }
    return LinearCode(std::move(sub), std::move(out));
}

inline LinearCode subfield_code(const LinearCode& C) {
    return subfield_code(C, polynomial_basis(C.field()));
}

// ----- subfield code by trace representation -----

// rows: the all-ones message row, then trace rows for b and c over a basis
inline LinearCode trace_code(const FamilyBuild& b) {
    const FieldTower& tw = *b.tower;
    const std::size_t n = 1 + b.defining.size();
    auto basis = polynomial_basis(tw);
    Matrix rows;
    {
        std::vector<std::uint32_t> r(n, 1);
        r[0] = 0;  // first coordinate carries Tr(b), and b = 0 here
        rows.push_back(std::move(r));
    }
    for (std::uint32_t beta : basis) {
        std::vector<std::uint32_t> r(n, 0);
        r[0] = tw.trace_top_to_mid(beta);
        for (std::size_t j = 0; j < b.defining.size(); ++j)
            r[j + 1] = tw.trace_top_to_mid(tw.mul(Level::top, beta, b.defining[j].first));
        rows.push_back(std::move(r));
    }
    for (std::uint32_t beta : basis) {
        std::vector<std::uint32_t> r(n, 0);
        for (std::size_t j = 0; j < b.defining.size(); ++j)
            r[j + 1] = tw.trace_top_to_mid(tw.mul(Level::top, beta, b.defining[j].second));
        rows.push_back(std::move(r));
    }
    return LinearCode(b.subtower, std::move(rows));
}

inline LinearCode punctured_subfield_code(const FamilyBuild& b) {
    return lincode::puncture(subfield_code(build_code(b)), 0);
}

// ----- expected closed forms -----

enum class CodeKind { parent, subfield, punctured };

inline const char* code_kind_name(CodeKind k) {
    switch (k) {
        case CodeKind::parent: return "parent";
        case CodeKind::subfield: return "subfield";
        default: return "punctured";
    }
}

struct DualClaim {
    std::uint64_t n = 0;
    std::optional<std::uint64_t> k;
    std::optional<std::uint64_t> d;
    bool hard = true;  // gate vs report-and-surface
};

struct ExpectedProfile {
    bool available = false;
    std::string provenance;  // which closed-form case produced it
    std::uint64_t n = 0, k = 0;
    std::map<std::uint64_t, BigInt> weights;  // nonzero weight -> multiplicity
    std::optional<DualClaim> dual;

    std::uint64_t min_weight() const { return weights.empty() ? 0 : weights.begin()->first; }

    BigInt total_with_zero() const {
        BigInt s = 1;
        for (const auto& [w, c] : weights) s += c;
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"available", available}};
        if (!available) {
            j["provenance"] = provenance;
            return j;
        }
        j["provenance"] = provenance;
        j["n"] = n;
        j["k"] = k;
        nlohmann::json ws = nlohmann::json::array();
        for (const auto& [w, c] : weights) ws.push_back({{"weight", w}, {"count", c.str()}});
        j["weights"] = ws;
        if (dual) {
            nlohmann::json dj{{"n", dual->n}, {"hard", dual->hard}};
            if (dual->k) dj["k"] = *dual->k;
            if (dual->d) dj["d"] = *dual->d;
            j["dual"] = dj;
        }
        return j;
    }
};

namespace detail {

inline BigInt ipow(std::uint64_t base, std::uint64_t e) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= base;
    return r;
}

inline std::uint64_t upow(std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= base;
    return r;
}

// (-1)^(l(p-1)(m+1)/4) for odd q, odd m
inline long long sgn_odd(std::uint32_t p, std::uint32_t l, std::uint32_t m) {
    return (std::uint64_t(l) * (p - 1) * (m + 1) / 4 % 2) ? -1 : 1;
}
// (-1)^(lm(p-1)/4) for odd q, even m
inline long long sgn_even(std::uint32_t p, std::uint32_t l, std::uint32_t m) {
    return (std::uint64_t(l) * m * (p - 1) / 4 % 2) ? -1 : 1;
}

// weight key from a base and a signed offset
inline std::uint64_t wkey(std::uint64_t base, long long delta) {
    long long v = static_cast<long long>(base) + delta;
    if (v < 0) throw consistency_error("negative weight in a closed form");
    return static_cast<std::uint64_t>(v);
}

}  // namespace detail

// Closed-form profile for the family's parent / subfield / punctured
// code; `W` is the zero-point Walsh product of the two functions, needed
// by F4 and F6.  Parameters outside every closed-form case produce an
// unavailable profile, never an extrapolated one.
inline ExpectedProfile expected_profile(const FamilySpec& spec, CodeKind kind, long long W = 0) {
    using detail::ipow;
    using detail::upow;
    auto [p, l] = factor_q(spec.q);
    const std::uint64_t q = spec.q;
    const std::uint32_t m = spec.m;
    ExpectedProfile pr;

    auto unavailable = [&](const std::string& why) {
        pr.available = false;
        pr.provenance = why;
        return pr;
    };

    switch (spec.family) {
        case Family::F1: {
            const std::uint64_t q3 = upow(q, 3);
            if (kind == CodeKind::parent) {
                pr.available = true;
                pr.provenance = "F1 parent closed form";
                pr.n = q3 + 1;
                pr.k = 3;
                pr.weights[q3 - q] += ipow(q, 4) * (q * q - 1) - ipow(q, 3) * (q * q - 1) +
                                     ipow(q, 2) * (q * q - 1);
                pr.weights[q3] += BigInt(q * q - 1) * (q3 + 1);
                pr.dual = DualClaim{q3 + 1, q3 - 2, 3, true};
            } else if (kind == CodeKind::subfield) {
                pr.available = true;
                pr.n = q3 + 1;
                pr.k = 5;
                if (q % 2 == 0) {
                    pr.provenance = "F1 subfield closed form, q even";
                    pr.weights[q3 - q * q - q] += ipow(q, 4) - 2 * ipow(q, 3) + ipow(q, 2);
                    pr.weights[q3 - q * q] += BigInt(q3 - q);
                    pr.weights[q3 - q * q + 1] += ipow(q, 5) - ipow(q, 4);
                    pr.weights[q3 - q] += BigInt(q3 - q * q);
                    pr.weights[q3] += q - 1;
                } else {
                    pr.provenance = "F1 subfield closed form, q odd";
                    pr.weights[q3 - q * q - q + 1] += ipow(q, 4) - 2 * ipow(q, 3) + ipow(q, 2);
                    pr.weights[q3 - q * q] += ipow(q, 4) - q;
                    pr.weights[q3 - q * q + 1] += ipow(q, 5) - 2 * ipow(q, 4) + ipow(q, 3);
                    pr.weights[q3 - q + 1] += BigInt(q3 - q * q);
                    pr.weights[q3] += q - 1;
                }
                pr.dual = DualClaim{q3 + 1, q3 - 4, 3, true};
            } else {
                pr.available = true;
                pr.provenance = "F1 punctured closed form";
                pr.n = q3;
                pr.k = 5;
                pr.weights[q3 - q * q - q] += ipow(q, 4) - 2 * ipow(q, 3) + ipow(q, 2);
                pr.weights[q3 - q * q] += ipow(q, 5) - ipow(q, 4) + ipow(q, 3) - q;
                pr.weights[q3 - q] += BigInt(q3 - q * q);
                pr.weights[q3] += q - 1;
                if (q == 2)
                    pr.dual = DualClaim{q3, 3, 4, true};
                else
                    pr.dual = DualClaim{q3, q3 - 5, 3, true};
            }
            return pr;
        }

        case Family::F2: {
            const std::uint64_t n_par = upow(q, 2 * m - 1) + 1;
            const std::uint64_t qm = upow(q, m);
            if (kind == CodeKind::parent) {
                pr.available = true;
                pr.n = n_par;
                pr.k = 3;
                const std::uint64_t w0 = upow(q, 2 * m - 1) - upow(q, m - 1);
                if (q % 2 == 0) {
                    pr.provenance = "F2 parent closed form, q even";
                    BigInt half = BigInt(qm) / 2 * (qm - 1) * (q - 1);
                    pr.weights[w0 - upow(q, m - 1) + 1] += half;
                    pr.weights[w0] += BigInt(qm) * (qm - 1);
                    pr.weights[w0 + 1] += BigInt(qm) * (qm - 1) * (qm - q + 1);
                    pr.weights[n_par - 1] += qm - 1;
                    pr.weights[n_par] += half;
                } else if (m % 2 == 1) {
                    pr.provenance = "F2 parent closed form, q odd, m odd";
                    BigInt half = ipow(q, 2 * m - 1) * (qm - 1) * (q - 1) / 2;
                    const std::uint64_t shift = upow(q, (m - 1) / 2);
                    pr.weights[w0 - shift + 1] += half;
                    pr.weights[w0] += BigInt(qm) * (qm - 1);
                    pr.weights[w0 + 1] += ipow(q, 2 * m - 1) * (qm - 1);
                    pr.weights[w0 + shift + 1] += half;
                    pr.weights[n_par - 1] += qm - 1;
                } else {
                    pr.provenance = "F2 parent closed form, q odd, m even";
                    const long long eps = detail::sgn_even(p, l, m);
                    const long long s1 = eps * static_cast<long long>(upow(q, (m - 2) / 2));
                    pr.weights[detail::wkey(w0, (long long)(q - 1) * s1 + 1)] += ipow(q, 2 * m - 1) * (qm - 1);
                    pr.weights[detail::wkey(w0, -s1 + 1)] += (ipow(q, 2 * m) - ipow(q, 2 * m - 1)) * (qm - 1);
                    pr.weights[w0] += BigInt(qm) * (qm - 1);
                    pr.weights[n_par - 1] += qm - 1;
                }
                pr.dual = DualClaim{n_par, n_par - 3, 3, true};
                return pr;
            }
            const std::uint64_t w0 = (q - 1) * upow(q, 2 * m - 2);
            if (kind == CodeKind::subfield) {
                pr.available = true;
                pr.n = n_par;
                if (q == 2 && m % 2 == 0) {
                    pr.provenance = "F2 subfield closed form, q = 2, m even";
                    pr.k = 2 * m;
                    pr.weights[upow(2, 2 * m - 2)] += ipow(2, 2 * m - 1) - 2;
                    pr.weights[upow(2, 2 * m - 2) + 1] += ipow(2, 2 * m - 1);
                    pr.weights[upow(2, 2 * m - 1)] += 1;
                    pr.dual = DualClaim{n_par, n_par - 2 * m, 3, true};
                } else if (q % 2 == 0 && m % 2 == 0) {
                    pr.provenance = "F2 subfield closed form, q = 2^l (l >= 2), m even";
                    pr.k = 2 * m + 1;
                    pr.weights[(q - 2) * upow(q, 2 * m - 2)] += BigInt(q) * (q - 1) * (q - 1) / 2;
                    pr.weights[w0] += ipow(q, 2 * m) - ipow(q, 3) + 2 * ipow(q, 2) - 2 * q;
                    pr.weights[w0 + 1] += ipow(q, 2 * m + 1) - ipow(q, 2 * m);
                    pr.weights[upow(q, 2 * m - 1)] += BigInt(q - 1) * (q * q - q + 2) / 2;
                    pr.dual = DualClaim{n_par, n_par - 1 - 2 * m, 3, true};
                } else if (q % 2 == 0) {
                    pr.provenance = "F2 subfield closed form, q even, m odd";
                    pr.k = 2 * m + 1;
                    pr.weights[(q - 2) * upow(q, 2 * m - 2) + 1] += BigInt(q) * (q - 1) * (q - 1) / 2;
                    pr.weights[w0] += ipow(q, 2 * m) - q;
                    pr.weights[w0 + 1] +=
                        ipow(q, 2 * m + 1) - ipow(q, 2 * m) - ipow(q, 3) + 2 * ipow(q, 2) - q;
                    pr.weights[upow(q, 2 * m - 1)] += q - 1;
                    pr.weights[upow(q, 2 * m - 1) + 1] += BigInt(q) * (q - 1) * (q - 1) / 2;
                    pr.dual = DualClaim{n_par, n_par - 1 - 2 * m, q == 2 ? 4ull : 3ull, true};
                } else {
                    pr.k = 2 * m + 1;
                    const bool pdividesm = (m % p == 0);
                    BigInt burst = (ipow(q, m + 2) - 2 * ipow(q, m + 1) + ipow(q, m)) / 2;
                    if (m % 2 == 1) {
                        const std::uint64_t shift = upow(q, (3 * m - 3) / 2);
                        if (pdividesm) {
                            pr.provenance = "F2 subfield closed form, q odd, m odd, p | m";
                            pr.weights[w0 - shift] += burst;
                            pr.weights[w0] += ipow(q, 2 * m) - ipow(q, m + 2) + 2 * ipow(q, m + 1) -
                                             ipow(q, m) - q;
                            pr.weights[w0 + 1] += ipow(q, 2 * m + 1) - ipow(q, 2 * m);
                            pr.weights[w0 + shift] += burst;
                        } else {
                            pr.provenance = "F2 subfield closed form, q odd, m odd, p !| m";
                            pr.weights[w0 - shift + 1] += burst;
                            pr.weights[w0] += ipow(q, 2 * m) - q;
                            pr.weights[w0 + 1] += ipow(q, 2 * m + 1) - ipow(q, 2 * m) -
                                                 ipow(q, m + 2) + 2 * ipow(q, m + 1) - ipow(q, m);
                            pr.weights[w0 + shift + 1] += burst;
                        }
                    } else {
                        const long long eps = detail::sgn_even(p, l, m);
                        const long long s1 = eps * static_cast<long long>(upow(q, (3 * m - 4) / 2));
                        if (pdividesm) {
                            pr.provenance = "F2 subfield closed form, q odd, m even, p | m";
                            pr.weights[detail::wkey(w0, -s1)] += ipow(q, m) * (q - 1) * (q - 1);
                            pr.weights[detail::wkey(w0, (long long)(q - 1) * s1)] += ipow(q, m + 1) - ipow(q, m);
                            pr.weights[w0] +=
                                ipow(q, 2 * m) - ipow(q, m + 2) + ipow(q, m + 1) - q;
                            pr.weights[w0 + 1] += ipow(q, 2 * m + 1) - ipow(q, 2 * m);
                        } else {
                            pr.provenance = "F2 subfield closed form, q odd, m even, p !| m";
                            pr.weights[detail::wkey(w0, -s1 + 1)] += ipow(q, m) * (q - 1) * (q - 1);
                            pr.weights[detail::wkey(w0, (long long)(q - 1) * s1 + 1)] += ipow(q, m + 1) - ipow(q, m);
                            pr.weights[w0] += ipow(q, 2 * m) - q;
                            pr.weights[w0 + 1] += ipow(q, 2 * m + 1) - ipow(q, 2 * m) -
                                                 ipow(q, m + 2) + ipow(q, m + 1);
                        }
                    }
                    pr.weights[upow(q, 2 * m - 1)] += q - 1;
                    pr.dual = DualClaim{n_par, n_par - 1 - 2 * m, 3, true};
                }
                return pr;
            }
            // punctured
            pr.available = true;
            pr.n = n_par - 1;
            if (q == 2) {
                pr.provenance = "F2 punctured closed form, q = 2";
                pr.k = 2 * m;
                pr.weights[upow(2, 2 * m - 2)] += ipow(2, 2 * m) - 2;
                pr.weights[upow(2, 2 * m - 1)] += 1;
                pr.dual = DualClaim{pr.n, pr.n - 2 * m, 4, true};
            } else if (q % 2 == 0) {
                pr.provenance = "F2 punctured closed form, q = 2^l (l >= 2)";
                pr.k = 2 * m + 1;
                pr.weights[(q - 2) * upow(q, 2 * m - 2)] += BigInt(q) * (q - 1) * (q - 1) / 2;
                pr.weights[w0] += ipow(q, 2 * m + 1) - ipow(q, 3) + 2 * ipow(q, 2) - 2 * q;
                pr.weights[upow(q, 2 * m - 1)] += BigInt(q - 1) * (q * q - q + 2) / 2;
                pr.dual = DualClaim{pr.n, pr.n - 2 * m - 1, 3, true};
            } else if (m % 2 == 1) {
                pr.provenance = "F2 punctured closed form, q odd, m odd";
                pr.k = 2 * m + 1;
                const std::uint64_t shift = upow(q, (3 * m - 3) / 2);
                BigInt burst = ipow(q, m) * (q - 1) * (q - 1) / 2;
                pr.weights[w0 - shift] += burst;
                pr.weights[w0] +=
                    ipow(q, 2 * m + 1) - ipow(q, m + 2) + 2 * ipow(q, m + 1) - ipow(q, m) - q;
                pr.weights[w0 + shift] += burst;
                pr.weights[upow(q, 2 * m - 1)] += q - 1;
                pr.dual = DualClaim{pr.n, pr.n - 2 * m - 1, 3, true};
            } else {
                pr.provenance = "F2 punctured closed form, q odd, m even";
                pr.k = 2 * m + 1;
                const long long eps = detail::sgn_even(p, l, m);
                const long long s1 = eps * static_cast<long long>(upow(q, (3 * m - 4) / 2));
                pr.weights[detail::wkey(w0, -s1)] += ipow(q, m + 2) - 2 * ipow(q, m + 1) + ipow(q, m);
                pr.weights[detail::wkey(w0, (long long)(q - 1) * s1)] += ipow(q, m + 1) - ipow(q, m);
                pr.weights[w0] += ipow(q, 2 * m + 1) - ipow(q, m + 2) + ipow(q, m + 1) - q;
                pr.weights[upow(q, 2 * m - 1)] += q - 1;
                pr.dual = DualClaim{pr.n, pr.n - 2 * m - 1, 3, true};
            }
            return pr;
        }

        case Family::F3: {
            const std::uint64_t w0 = upow(2, 2 * m - 2), top = upow(2, 2 * m - 1);
            const std::uint64_t shift = upow(2, (3 * m - 3) / 2);
            if (kind == CodeKind::parent) return unavailable("no closed form for the F3 parent");
            pr.available = true;
            pr.k = 2 * m + 1;
            if (kind == CodeKind::subfield) {
                pr.provenance = "F3 subfield closed form";
                pr.n = top + 1;
                pr.weights[w0 - shift + 1] += upow(2, m - 1);
                pr.weights[w0] += ipow(2, 2 * m) - 2;
                pr.weights[w0 + 1] += ipow(2, 2 * m) - ipow(2, m);
                pr.weights[w0 + shift + 1] += upow(2, m - 1);
                pr.weights[top] += 1;
                pr.dual = DualClaim{pr.n, top - 2 * m, 4, true};
            } else {
                pr.provenance = "F3 punctured closed form";
                pr.n = top;
                pr.weights[w0 - shift] += upow(2, m - 1);
                pr.weights[w0] += ipow(2, 2 * m + 1) - ipow(2, m) - 2;
                pr.weights[w0 + shift] += upow(2, m - 1);
                pr.weights[top] += 1;
                pr.dual = DualClaim{pr.n, pr.n - 2 * m - 1, 4, true};
            }
            return pr;
        }

        case Family::F4: {
            if (kind != CodeKind::punctured)
                return unavailable("closed form only for the F4 punctured code");
            if (W != 0 && W != (1LL << (m + 1)) && W != -(1LL << (m + 1)))
                throw spec_error("F4 needs W in {0, +-2^(m+1)}");
            pr.available = true;
            pr.provenance = "F4 punctured closed form (W = " + std::to_string(W) + ")";
            const long long w0 = (1LL << (2 * m - 2)) + W / 4;
            const long long half = 1LL << (m - 1);
            pr.n = static_cast<std::uint64_t>((1LL << (2 * m - 1)) + W / 2);
            pr.k = 2 * m + 1;
            BigInt wsq = BigInt(W) * W;
            BigInt side = ipow(2, 2 * m - 2) - wsq / ipow(2, 2 * m + 2);
            pr.weights[w0 - half] += side;
            pr.weights[w0] += 3 * ipow(2, 2 * m - 1) - 2 + wsq / ipow(2, 2 * m + 1);
            pr.weights[w0 + half] += side;
            pr.weights[pr.n] += 1;
            pr.dual = DualClaim{pr.n, pr.n - 2 * m - 1, 4, true};
            return pr;
        }

        case Family::F5: {
            const std::uint64_t w0 = upow(2, 2 * m - 2), top = upow(2, 2 * m - 1);
            const std::uint64_t shift = upow(2, (3 * m - 4) / 2);
            if (kind == CodeKind::parent) return unavailable("no closed form for the F5 parent");
            pr.available = true;
            pr.k = 2 * m + 1;
            if (kind == CodeKind::subfield) {
                pr.provenance = "F5 subfield closed form";
                pr.n = top + 1;
                pr.weights[w0 - shift] += upow(2, m);
                pr.weights[w0] += ipow(2, 2 * m) - ipow(2, m + 1) - 2;
                pr.weights[w0 + 1] += ipow(2, 2 * m);
                pr.weights[w0 + shift] += upow(2, m);
                pr.weights[top] += 1;
                pr.dual = DualClaim{pr.n, top - 2 * m, 3, true};
            } else {
                pr.provenance = "F5 punctured closed form";
                pr.n = top;
                pr.weights[w0 - shift] += upow(2, m);
                pr.weights[w0] += ipow(2, 2 * m + 1) - ipow(2, m + 1) - 2;
                pr.weights[w0 + shift] += upow(2, m);
                pr.weights[top] += 1;
                pr.dual = DualClaim{pr.n, pr.n - 2 * m - 1, 4, true};
            }
            return pr;
        }

        case Family::F6: {
            if (kind == CodeKind::parent) return unavailable("no closed form for the F6 parent");
            if (W != (1LL << m) && W != -(1LL << m)) throw spec_error("F6 needs W = +-2^m");
            const long long w0 = (1LL << (2 * m - 2)) + W / 4;
            const long long quarter = 1LL << (m - 2);
            const long long ntop = (1LL << (2 * m - 1)) + W / 2;
            pr.available = true;
            pr.k = 2 * m + 1;
            if (kind == CodeKind::subfield) {
                pr.provenance = "F6 subfield closed form (W = " + std::to_string(W) + ")";
                pr.n = static_cast<std::uint64_t>(ntop + 1);
                pr.weights[w0 - quarter] += ipow(2, 2 * m - 1) - 1;
                pr.weights[w0 - quarter + 1] += ipow(2, 2 * m - 1);
                pr.weights[w0 + quarter] += ipow(2, 2 * m - 1) - 1;
                pr.weights[w0 + quarter + 1] += ipow(2, 2 * m - 1);
                pr.weights[static_cast<std::uint64_t>(ntop)] += 1;
                // the source's dual dimension claim is malformed; the dual
                // minimum distance claim (3) is surfaced but not gated
                pr.dual = DualClaim{pr.n, std::nullopt, 3, false};
            } else {
                pr.provenance = "F6 punctured closed form (W = " + std::to_string(W) + ")";
                pr.n = static_cast<std::uint64_t>(ntop);
                pr.weights[w0 - quarter] += ipow(2, 2 * m) - 1;
                pr.weights[w0 + quarter] += ipow(2, 2 * m) - 1;
                pr.weights[static_cast<std::uint64_t>(ntop)] += 1;
                pr.dual = DualClaim{pr.n, pr.n - 2 * m - 1, 4, false};
            }
            return pr;
        }
    }
    return unavailable("unreachable");
}

// ----- verification: brute force against the closed forms -----

struct WeightDiff {
    std::uint64_t weight;
    BigInt expected, actual;
};

struct CodeCheck {
    std::string kind;
    std::uint64_t n = 0, k = 0, d = 0;
    bool enumerated = false;
    ExpectedProfile expected;
    std::vector<WeightDiff> weight_diffs;
    bool params_match = true;
    std::uint64_t dual_k = 0, dual_d = 0;
    bool dual_checked = false;
    bool dual_match = true;
    bool pless_ok = true;
    std::vector<BoundVerdict> bounds;
    bool griesmer_expected = false, griesmer_ok = true;
    std::optional<bool> hermitian;
    bool hermitian_expected = false;
    std::vector<std::string> discrepancies;  // surfaced, not gating
    bool pass = true;

    nlohmann::json to_json() const {
        nlohmann::json j{{"kind", kind},         {"n", n},
                         {"k", k},               {"d", d},
                         {"enumerated", enumerated}, {"expected", expected.to_json()},
                         {"params_match", params_match}, {"pass", pass}};
        if (!weight_diffs.empty()) {
            nlohmann::json diffs = nlohmann::json::array();
            for (const auto& wd : weight_diffs)
                diffs.push_back({{"weight", wd.weight},
                                 {"expected", wd.expected.str()},
                                 {"actual", wd.actual.str()}});
            j["weight_diffs"] = diffs;
        }
        if (dual_checked) {
            j["dual"] = {{"k", dual_k}, {"d", dual_d}, {"match", dual_match}};
            j["pless_ok"] = pless_ok;
        }
        if (!bounds.empty()) {
            nlohmann::json bs = nlohmann::json::array();
            for (const auto& b : bounds) bs.push_back(b.to_json());
            j["bounds"] = bs;
            if (griesmer_expected) j["griesmer_equality"] = griesmer_ok;
        }
        if (hermitian) j["hermitian_self_orthogonal"] = *hermitian;
        if (!discrepancies.empty()) j["discrepancies"] = discrepancies;
        return j;
    }
};

struct FamilyReport {
    FamilySpec spec;
    nlohmann::json field;
    std::uint64_t defining_size = 0;
    bool defining_size_ok = true;
    bool length_formula_ok = true;
    long long walsh_f0 = 0, walsh_g0 = 0, W = 0;
    std::vector<CodeCheck> codes;
    bool trace_matches_subfield = true;
    bool basis_invariance_ok = true;
    bool delta_offset_ok = true;
    bool delta_offset_checked = false;
    bool hyperplane_ok = true;
    std::vector<std::string> notes;
    bool pass = true;

    nlohmann::json to_json() const {
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& c : codes) cs.push_back(c.to_json());
        return nlohmann::json{{"spec", spec.to_json()},
                              {"field", field},
                              {"defining_size", defining_size},
                              {"defining_size_ok", defining_size_ok},
                              {"length_formula_ok", length_formula_ok},
                              {"walsh_f0", walsh_f0},
                              {"walsh_g0", walsh_g0},
                              {"W", W},
                              {"codes", cs},
                              {"trace_matches_subfield", trace_matches_subfield},
                              {"basis_invariance_ok", basis_invariance_ok},
                              {"delta_offset_checked", delta_offset_checked},
                              {"delta_offset_ok", delta_offset_ok},
                              {"hyperplane_ok", hyperplane_ok},
                              {"notes", notes},
                              {"pass", pass}};
    }
};

struct VerifyOptions {
    std::uint64_t budget = enumeration_budget();
    unsigned threads = 1;
};

namespace detail {

inline void diff_weights(const WeightDistribution& dist, const ExpectedProfile& pr,
                         CodeCheck& chk) {
    std::map<std::uint64_t, BigInt> actual;
    for (std::size_t i = 1; i < dist.counts.size(); ++i)
        if (dist.counts[i] > 0) actual[i] = dist.counts[i];
    for (const auto& [w, c] : pr.weights) {
        auto it = actual.find(w);
        BigInt a = (it == actual.end()) ? BigInt(0) : it->second;
        if (a != c) chk.weight_diffs.push_back({w, c, a});
    }
    for (const auto& [w, a] : actual)
        if (!pr.weights.count(w)) chk.weight_diffs.push_back({w, BigInt(0), a});
}

// one constructed code, checked against its closed form when available
inline CodeCheck check_code(const LinearCode& C, const ExpectedProfile& pr, const char* kind,
                            bool enumerate, const VerifyOptions& opt) {
    CodeCheck chk;
    chk.kind = kind;
    chk.n = C.n();
    chk.k = C.k();
    chk.expected = pr;
    if (!enumerate) {
        chk.enumerated = false;
        if (pr.available) chk.params_match = (chk.n == pr.n && chk.k == pr.k);
        chk.pass = chk.params_match;
        return chk;
    }
    auto dist = lincode::weight_distribution(C, opt.budget, opt.threads);
    chk.enumerated = true;
    chk.d = dist.min_distance();

    if (pr.available) {
        chk.params_match = (chk.n == pr.n && chk.k == pr.k && chk.d == pr.min_weight());
        diff_weights(dist, pr, chk);
    }

    auto ddist = lincode::macwilliams_transform(dist, C.k());
    chk.dual_checked = true;
    chk.dual_k = C.n() - C.k();
    chk.dual_d = ddist.min_distance();
    if (pr.available && pr.dual) {
        bool kmatch = !pr.dual->k || *pr.dual->k == chk.dual_k;
        bool dmatch = !pr.dual->d || *pr.dual->d == chk.dual_d;
        if (pr.dual->hard) {
            chk.dual_match = kmatch && dmatch;
        } else if (!kmatch || !dmatch) {
            std::string claim = "claimed dual [";
            claim += std::to_string(pr.dual->n) + ", " +
                     (pr.dual->k ? std::to_string(*pr.dual->k) : std::string("?")) + ", " +
                     (pr.dual->d ? std::to_string(*pr.dual->d) : std::string("?")) +
                     "], computed [" + std::to_string(C.n()) + ", " + std::to_string(chk.dual_k) +
                     ", " + std::to_string(chk.dual_d) + "]";
            chk.discrepancies.push_back(claim);
        }
    }
    std::array<BigInt, 4> prefix{ddist.counts[0], ddist.counts[1], ddist.counts[2],
                                 ddist.counts[3]};
    chk.pless_ok = lincode::pless_check(dist, C.k(), prefix).ok;

    if (chk.d >= 1) chk.bounds = lincode::bound_verdicts(chk.n, chk.k, chk.d, C.q());

    chk.pass = chk.params_match && chk.weight_diffs.empty() && chk.dual_match && chk.pless_ok;
    return chk;
}

}  // namespace detail

inline FamilyReport verify_family(const FamilySpec& spec, const VerifyOptions& opt = {}) {
    FamilyReport rep;
    rep.spec = spec;

    FamilyBuild b = prepare(spec);
    rep.field = b.tower->descriptor();
    rep.defining_size = b.defining.size();
    rep.walsh_f0 = b.walsh_f0;
    rep.walsh_g0 = b.walsh_g0;
    rep.W = b.W();

    // closed-form size of the defining set
    {
        std::uint64_t expect = 0;
        const std::uint64_t q = spec.q;
        switch (spec.family) {
            case Family::F1: expect = q * q * q; break;
            case Family::F2:
            case Family::F3:
            case Family::F5: expect = detail::upow(q, 2 * spec.m - 1); break;
            case Family::F4:
            case Family::F6:
                expect = static_cast<std::uint64_t>(
                    (1LL << (2 * spec.m - 1)) + rep.W / 2);
                break;
        }
        rep.defining_size_ok = (rep.defining_size == expect);
    }

    rep.length_formula_ok =
        charsum::check_length_formula(*b.tower, b.ftab, b.gtab, rep.defining_size,
                                      std::string(family_name(spec.family)) + " q=" +
                                          std::to_string(spec.q) + " m=" + std::to_string(spec.m))
            .ok();

    LinearCode parent = build_code(b);
    LinearCode sub = subfield_code(parent);
    LinearCode trc = trace_code(b);
    LinearCode punc = lincode::puncture(sub, 0);

    rep.trace_matches_subfield = sub.same_row_space(trc);

    const long long W = rep.W;
    bool parent_form = (spec.family == Family::F1 || spec.family == Family::F2);
    auto parent_pr = expected_profile(spec, CodeKind::parent, W);
    auto sub_pr = expected_profile(spec, CodeKind::subfield, W);
    auto punc_pr = expected_profile(spec, CodeKind::punctured, W);

    CodeCheck cparent = detail::check_code(parent, parent_pr, "parent", parent_form, opt);
    CodeCheck csub = detail::check_code(sub, sub_pr, "subfield", true, opt);
    CodeCheck cpunc = detail::check_code(punc, punc_pr, "punctured", true, opt);

    // Griesmer equality claims
    if (spec.family == Family::F1 && cparent.enumerated) {
        cparent.griesmer_expected = true;
        cparent.griesmer_ok = !cparent.bounds.empty() && cparent.bounds[0].meets_with_equality;
    }
    if (spec.family == Family::F2 && spec.q == 2) {
        cpunc.griesmer_expected = true;
        cpunc.griesmer_ok = !cpunc.bounds.empty() && cpunc.bounds[0].meets_with_equality;
    }

    // quaternary Hermitian self-orthogonality claims
    if (spec.family == Family::F1 && spec.q == 2) {
        cparent.hermitian = lincode::hermitian_self_orthogonal(parent);
        cparent.hermitian_expected = true;
    }
    if ((spec.family == Family::F1 || spec.family == Family::F2) && spec.q == 4) {
        cpunc.hermitian = lincode::hermitian_self_orthogonal(punc);
        cpunc.hermitian_expected = true;
        // Hermitian self-duality would need dimension n/2; with k = 2m+1
        // that never holds, so only self-orthogonality is claimed/tested.
        if (spec.family == Family::F2 && punc.k() * 2 != punc.n())
            rep.notes.push_back("punctured: Hermitian self-orthogonal verified; self-duality "
                                "impossible at dimension " +
                                std::to_string(punc.k()) + " of length " +
                                std::to_string(punc.n()));
    }

    // basis invariance: three deterministic pseudo-random bases
    {
        std::mt19937_64 rng(0x5eedf00dULL + spec.q * 1000 + spec.m);
        std::uniform_int_distribution<std::uint32_t> dist(
            0, static_cast<std::uint32_t>(b.tower->Q() - 1));
        int built = 0;
        while (built < 3) {
            std::vector<std::uint32_t> basis(spec.m);
            for (auto& e : basis) e = dist(rng);
            try {
                LinearCode alt = subfield_code(parent, basis);
                ++built;
                if (!alt.same_row_space(sub)) rep.basis_invariance_ok = false;
                if (built == 1) {
                    auto altdist = lincode::weight_distribution(alt, opt.budget, opt.threads);
                    auto subdist = lincode::weight_distribution(sub, opt.budget, opt.threads);
                    if (!(altdist == subdist)) rep.basis_invariance_ok = false;
                }
            } catch (const domain_error&) {
                // dependent sample; draw again
            }
        }
    }

    // First-coordinate bookkeeping: enumerate the codewords through the
    // (a, b, c) display, where the leading coordinate is Tr(b) and the
    // rest is a + Tr(bx + cy) over the defining set.  The full weight
    // exceeds the punctured weight exactly when Tr(b) != 0, and both
    // histograms must reproduce the enumerated distributions up to the
    // covering multiplicity q * Q^2 / q^k.
    {
        const std::uint64_t Q = b.tower->Q();
        const std::uint64_t msgs = spec.q * Q * Q;
        if (msgs <= (1ull << 15)) {
            rep.delta_offset_checked = true;
            const auto& D = b.defining;
            std::vector<std::uint64_t> hist_full(sub.n() + 1, 0), hist_punc(sub.n(), 0);
            for (std::uint64_t a = 0; a < spec.q; ++a)
                for (std::uint64_t bb = 0; bb < Q; ++bb) {
                    std::uint32_t tb = b.tower->trace_top_to_mid(static_cast<std::uint32_t>(bb));
                    for (std::uint64_t cc = 0; cc < Q; ++cc) {
                        std::size_t wt_rest = 0;
                        for (const auto& [x, y] : D) {
                            std::uint32_t v = b.tower->trace_top_to_mid(b.tower->add(
                                Level::top,
                                b.tower->mul(Level::top, static_cast<std::uint32_t>(bb), x),
                                b.tower->mul(Level::top, static_cast<std::uint32_t>(cc), y)));
                            v = b.tower->add(Level::mid, v, static_cast<std::uint32_t>(a));
                            if (v != 0) ++wt_rest;
                        }
                        ++hist_punc[wt_rest];
                        ++hist_full[wt_rest + (tb != 0 ? 1 : 0)];
                    }
                }
            auto subdist = lincode::weight_distribution(sub, opt.budget, opt.threads);
            auto puncdist = lincode::weight_distribution(punc, opt.budget, opt.threads);
            const BigInt mult_full = BigInt(msgs) / subdist.total();
            const BigInt mult_punc = BigInt(msgs) / puncdist.total();
            bool ok = (BigInt(msgs) % subdist.total() == 0) &&
                      (BigInt(msgs) % puncdist.total() == 0);
            for (std::size_t w = 0; w < hist_full.size() && ok; ++w)
                ok = (BigInt(hist_full[w]) == subdist.counts[w] * mult_full);
            for (std::size_t w = 0; w < hist_punc.size() && ok; ++w)
                ok = (BigInt(hist_punc[w]) == puncdist.counts[w] * mult_punc);
            rep.delta_offset_ok = ok;
        }
    }

    // hyperplane weight identity on 100 random messages of the parent
    {
        std::mt19937_64 rng(0xfeedbeefULL + spec.q + spec.m);
        std::uniform_int_distribution<std::uint32_t> dist(
            0, static_cast<std::uint32_t>(b.tower->Q() - 1));
        for (int it = 0; it < 100; ++it) {
            std::vector<std::uint32_t> u{dist(rng), dist(rng), dist(rng)};
            if (!lincode::hyperplane_weight_check(parent, u)) {
                rep.hyperplane_ok = false;
                break;
            }
        }
    }

    bool herm_ok = (!cparent.hermitian_expected || cparent.hermitian == true) &&
                   (!cpunc.hermitian_expected || cpunc.hermitian == true);
    bool griesmer_ok = cparent.griesmer_ok && cpunc.griesmer_ok;

    rep.codes = {std::move(cparent), std::move(csub), std::move(cpunc)};
    rep.pass = rep.defining_size_ok && rep.length_formula_ok && rep.trace_matches_subfield &&
               rep.basis_invariance_ok && rep.delta_offset_ok && rep.hyperplane_ok && herm_ok &&
               griesmer_ok;
    for (const auto& c : rep.codes) rep.pass = rep.pass && c.pass;
    for (const auto& c : rep.codes)
        for (const auto& note : c.discrepancies)
            rep.notes.push_back(c.kind + ": " + note);
    return rep;
}

}  // namespace families
}  // namespace fwc

#endif
