#ifndef FWC_FUNCLIB_HPP
#define FWC_FUNCLIB_HPP

// Catalogue of the functions the constructions draw from (trace, norm,
// squared trace, trace of a monomial, Maiorana-McFarland bents, explicit
// tables), plus exact Walsh-spectrum computation and almost-bent / bent
// classification over F_{2^m}.

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fwc/galois.hpp"

namespace fwc {

enum class FuncKind {
    Trace,
    TraceOfSquare,
    Norm,
    TraceOfMonomial,
    BentMaioranaMcFarland,
    BentMonomial,
    ExplicitTable,
};

enum class FuncClass { AlmostBent, Bent, Linear, Other };

inline const char* func_kind_name(FuncKind k) {
    switch (k) {
        case FuncKind::Trace: return "Trace";
        case FuncKind::TraceOfSquare: return "TraceOfSquare";
        case FuncKind::Norm: return "Norm";
        case FuncKind::TraceOfMonomial: return "TraceOfMonomial";
        case FuncKind::BentMaioranaMcFarland: return "BentMaioranaMcFarland";
        case FuncKind::BentMonomial: return "BentMonomial";
        default: return "ExplicitTable";
    }
}

inline const char* func_class_name(FuncClass c) {
    switch (c) {
        case FuncClass::AlmostBent: return "AlmostBent";
        case FuncClass::Bent: return "Bent";
        case FuncClass::Linear: return "Linear";
        default: return "Other";
    }
}

// A declared function on F_{q^m}.  The spec is a pure description; it is
// evaluated against a FieldTower.  Classification flags are only set by
// classify_and_flag after an explicit Walsh verification.
struct FuncSpec {
    FuncKind kind = FuncKind::Trace;
    std::uint64_t t = 0;     // monomial exponent
    std::uint32_t mask = 0;  // bent kinds: optional linear term Tr(mask*x)
    std::uint32_t cst = 0;   // bent kinds: optional affine constant
    std::vector<std::uint32_t> table;  // ExplicitTable values
    bool table_target_top = false;     // ExplicitTable maps into the top field

    bool is_almost_bent = false;
    bool is_bent = false;

    static FuncSpec trace() { return FuncSpec{FuncKind::Trace}; }
    static FuncSpec trace_of_square() { return FuncSpec{FuncKind::TraceOfSquare}; }
    static FuncSpec norm() { return FuncSpec{FuncKind::Norm}; }
    static FuncSpec trace_of_monomial(std::uint64_t t) {
        FuncSpec f{FuncKind::TraceOfMonomial};
        f.t = t;
        return f;
    }
    static FuncSpec bent_mm(std::uint32_t mask = 0, std::uint32_t cst = 0) {
        FuncSpec f{FuncKind::BentMaioranaMcFarland};
        f.mask = mask;
        f.cst = cst;
        return f;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"kind", func_kind_name(kind)}};
        if (kind == FuncKind::TraceOfMonomial || kind == FuncKind::BentMonomial) j["t"] = t;
        if (kind == FuncKind::BentMaioranaMcFarland || kind == FuncKind::BentMonomial) {
            if (mask) j["mask"] = mask;
            if (cst) j["cst"] = cst;
        }
        if (kind == FuncKind::ExplicitTable) {
            j["table"] = table;
            j["table_target_top"] = table_target_top;
        }
        return j;
    }

    static FuncSpec from_json(const nlohmann::json& j) {
        FuncSpec f;
        std::string k = j.at("kind").get<std::string>();
        if (k == "Trace") f.kind = FuncKind::Trace;
        else if (k == "TraceOfSquare") f.kind = FuncKind::TraceOfSquare;
        else if (k == "Norm") f.kind = FuncKind::Norm;
        else if (k == "TraceOfMonomial") f.kind = FuncKind::TraceOfMonomial;
        else if (k == "BentMaioranaMcFarland") f.kind = FuncKind::BentMaioranaMcFarland;
        else if (k == "BentMonomial") f.kind = FuncKind::BentMonomial;
        else if (k == "ExplicitTable") f.kind = FuncKind::ExplicitTable;
        else throw spec_error("unknown function kind: " + k);
        f.t = j.value("t", std::uint64_t{0});
        f.mask = j.value("mask", std::uint32_t{0});
        f.cst = j.value("cst", std::uint32_t{0});
        if (j.contains("table")) f.table = j.at("table").get<std::vector<std::uint32_t>>();
        f.table_target_top = j.value("table_target_top", false);
        return f;
    }
};

namespace funclib {

inline bool requires_binary(FuncKind k) {
    return k == FuncKind::TraceOfMonomial || k == FuncKind::BentMaioranaMcFarland ||
           k == FuncKind::BentMonomial;
}

inline void validate(const FieldTower& tw, const FuncSpec& f) {
    if (requires_binary(f.kind) && tw.q() != 2)
        throw spec_error(std::string(func_kind_name(f.kind)) + " requires q = 2");
    if (f.kind == FuncKind::BentMaioranaMcFarland && tw.m() % 2 != 0)
        throw spec_error("BentMaioranaMcFarland requires even m");
    if (f.kind == FuncKind::ExplicitTable) {
        if (f.table.size() != tw.Q()) throw spec_error("explicit table has the wrong size");
        std::uint64_t bound = f.table_target_top ? tw.Q() : tw.q();
        for (std::uint32_t v : f.table)
            if (v >= bound) throw spec_error("explicit table value out of range");
    }
    if ((f.kind == FuncKind::TraceOfMonomial || f.kind == FuncKind::BentMonomial) && f.t == 0)
        throw spec_error("monomial exponent must be positive");
}

// The value table of f over the whole top field; values are mid-field
// encodings (F_2 in the binary kinds) unless the spec targets the top.
inline std::vector<std::uint32_t> value_table(const FieldTower& tw, const FuncSpec& f) {
    validate(tw, f);
    const std::uint64_t Q = tw.Q();
    std::vector<std::uint32_t> out(Q);
    switch (f.kind) {
        case FuncKind::Trace:
            for (std::uint64_t x = 0; x < Q; ++x)
                out[x] = tw.trace_top_to_mid(static_cast<std::uint32_t>(x));
            break;
        case FuncKind::TraceOfSquare:
            for (std::uint64_t x = 0; x < Q; ++x) {
                auto xx = tw.mul(Level::top, static_cast<std::uint32_t>(x),
                                 static_cast<std::uint32_t>(x));
                out[x] = tw.trace_top_to_mid(xx);
            }
            break;
        case FuncKind::Norm:
            for (std::uint64_t x = 0; x < Q; ++x)
                out[x] = tw.norm_top_to_mid(static_cast<std::uint32_t>(x));
            break;
        case FuncKind::TraceOfMonomial:
        case FuncKind::BentMonomial:
            for (std::uint64_t x = 0; x < Q; ++x)
                out[x] = tw.trace_top_to_mid(tw.pow(Level::top, static_cast<std::uint32_t>(x), f.t));
            break;
        case FuncKind::BentMaioranaMcFarland: {
            const std::uint32_t s = tw.m() / 2;
            FieldTower half(2, 1, s);
            const std::uint32_t smask = (s >= 32) ? ~0u : ((1u << s) - 1);
            for (std::uint64_t x = 0; x < Q; ++x) {
                std::uint32_t u = static_cast<std::uint32_t>(x) & smask;
                std::uint32_t v = static_cast<std::uint32_t>(x >> s) & smask;
                std::uint32_t b = half.trace_top_to_mid(half.mul(Level::top, u, v));
                if (f.mask)
                    b ^= tw.trace_to_prime(Level::top,
                                           tw.mul(Level::top, f.mask, static_cast<std::uint32_t>(x)));
                out[x] = b ^ (f.cst & 1);
            }
            break;
        }
        case FuncKind::ExplicitTable:
            out = f.table;
            break;
    }
    return out;
}

inline std::uint32_t eval(const FieldTower& tw, const FuncSpec& f, std::uint32_t x) {
    validate(tw, f);
    if (x >= tw.Q()) throw structural_error("argument outside the source field");
    switch (f.kind) {
        case FuncKind::Trace: return tw.trace_top_to_mid(x);
        case FuncKind::TraceOfSquare: return tw.trace_top_to_mid(tw.mul(Level::top, x, x));
        case FuncKind::Norm: return tw.norm_top_to_mid(x);
        case FuncKind::TraceOfMonomial:
        case FuncKind::BentMonomial: return tw.trace_top_to_mid(tw.pow(Level::top, x, f.t));
        case FuncKind::ExplicitTable: return f.table[x];
        default: return value_table(tw, f)[x];
    }
}

// Vectorial view of the spec (a map F_{2^m} -> F_{2^m}), if it has one.
inline bool has_vectorial_view(const FuncSpec& f) {
    return f.kind == FuncKind::TraceOfMonomial ||
           (f.kind == FuncKind::ExplicitTable && f.table_target_top);
}

inline std::vector<std::uint32_t> vectorial_table(const FieldTower& tw, const FuncSpec& f) {
    if (!has_vectorial_view(f)) throw spec_error("function has no vectorial view");
    if (f.kind == FuncKind::ExplicitTable) return f.table;
    std::vector<std::uint32_t> out(tw.Q());
    for (std::uint64_t x = 0; x < tw.Q(); ++x)
        out[x] = tw.pow(Level::top, static_cast<std::uint32_t>(x), f.t);
    return out;
}

// In-place Walsh-Hadamard transform; exact integer arithmetic.
inline void fwht(std::vector<long long>& v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1)
        for (std::size_t i = 0; i < v.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                long long a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
}

// W(b) = sum_x (-1)^{g(x) + Tr(bx)} for a Boolean table g.  The bilinear
// form Tr(bx) is symmetric in the F_2-coordinates of b and x up to a
// change of basis, handled by transforming in the dual coordinates.
inline std::vector<long long> boolean_walsh(const FieldTower& tw,
                                            const std::vector<std::uint32_t>& g) {
    const std::uint64_t Q = tw.Q();
    // signs indexed by x
    std::vector<long long> s(Q);
    for (std::uint64_t x = 0; x < Q; ++x) s[x] = g[x] ? -1 : 1;
    // The plain FWHT computes sums with signs (-1)^{<b,x>} in the standard
    // bit pairing.  Tr(bx) is a different nondegenerate pairing, so build
    // the transform by direct summation over a basis-converted input:
    // index x by its coordinates and accumulate W(b) = sum_x s[x] (-1)^{Tr(bx)}.
    // Convert s to the dual ordering first: y-coordinate of x is Tr(e_i x).
    // For exactness and simplicity we re-index through the pairing matrix.
    const std::uint32_t nbits = tw.l() * tw.m();
    std::vector<std::uint32_t> pairing(nbits);  // pairing[i] bitmask: Tr(e_i * e_j)
    for (std::uint32_t i = 0; i < nbits; ++i) {
        std::uint32_t row = 0;
        for (std::uint32_t j = 0; j < nbits; ++j) {
            std::uint32_t prod = tw.mul(Level::top, 1u << i, 1u << j);
            if (tw.trace_to_prime(Level::top, prod)) row |= 1u << j;
        }
        pairing[i] = row;
    }
    // Tr(bx) = <phi(b), x> in standard bits, phi(b) = xor of pairing rows of b
    std::vector<long long> re(Q);
    fwht(s);
    // s is now S(u) = sum_x in standard pairing; W(b) = S(phi(b))
    for (std::uint64_t b = 0; b < Q; ++b) {
        std::uint32_t u = 0, bb = static_cast<std::uint32_t>(b);
        while (bb) {
            std::uint32_t i = static_cast<std::uint32_t>(std::countr_zero(bb));
            u ^= pairing[i];
            bb &= bb - 1;
        }
        re[b] = s[u];
    }
    return re;
}

inline std::vector<long long> boolean_walsh_direct(const FieldTower& tw,
                                                   const std::vector<std::uint32_t>& g) {
    const std::uint64_t Q = tw.Q();
    std::vector<long long> w(Q, 0);
    for (std::uint64_t b = 0; b < Q; ++b) {
        long long acc = 0;
        for (std::uint64_t x = 0; x < Q; ++x) {
            std::uint32_t bx = tw.mul(Level::top, static_cast<std::uint32_t>(b),
                                      static_cast<std::uint32_t>(x));
            std::uint32_t e = g[x] ^ tw.trace_to_prime(Level::top, bx);
            acc += e ? -1 : 1;
        }
        w[b] = acc;
    }
    return w;
}

// Exact Walsh spectrum.  Boolean case: one row indexed by b.  Vectorial
// case: rows indexed by a in F_{2^m}^*, columns by b.
struct WalshSpectrum {
    bool vectorial = false;
    std::uint32_t m = 0;
    std::vector<std::vector<long long>> rows;
    std::map<long long, std::uint64_t> histogram;

    void build_histogram() {
        histogram.clear();
        for (const auto& r : rows)
            for (long long v : r) ++histogram[v];
    }

    bool parseval_ok() const {
        const long long target = 1LL << (2 * m);
        for (const auto& r : rows) {
            long long s = 0;
            for (long long v : r) s += v * v;
            if (s != target) return false;
        }
        return true;
    }
};

inline WalshSpectrum walsh_spectrum(const FieldTower& tw, const FuncSpec& f) {
    if (tw.q() != 2) throw domain_error("Walsh spectrum requires q = 2");
    const std::uint32_t m = tw.m();
    WalshSpectrum ws;
    ws.m = m;
    if (has_vectorial_view(f)) {
        if (m > 12) throw resource_error("vectorial Walsh scan capped at m = 12");
        ws.vectorial = true;
        auto F = vectorial_table(tw, f);
        const std::uint64_t Q = tw.Q();
        ws.rows.reserve(Q - 1);
        std::vector<std::uint32_t> comp(Q);
        for (std::uint64_t a = 1; a < Q; ++a) {
            for (std::uint64_t x = 0; x < Q; ++x)
                comp[x] = tw.trace_to_prime(
                    Level::top, tw.mul(Level::top, static_cast<std::uint32_t>(a), F[x]));
            ws.rows.push_back(boolean_walsh(tw, comp));
        }
    } else {
        if (m > 20) throw resource_error("Boolean Walsh scan capped at m = 20");
        ws.vectorial = false;
        ws.rows.push_back(boolean_walsh(tw, value_table(tw, f)));
    }
    ws.build_histogram();
    if (!ws.parseval_ok()) throw consistency_error("Walsh spectrum violates Parseval");
    return ws;
}

inline bool is_linear_table(const FieldTower& tw, const std::vector<std::uint32_t>& F,
                            bool target_top) {
    if (F[0] != 0) return false;
    const std::uint32_t nbits = tw.l() * tw.m();
    Level lv = target_top ? Level::top : Level::mid;
    for (std::uint64_t x = 1; x < tw.Q(); ++x) {
        std::uint32_t acc = 0, xx = static_cast<std::uint32_t>(x);
        while (xx) {
            std::uint32_t i = static_cast<std::uint32_t>(std::countr_zero(xx));
            if (i >= nbits) return false;
            acc = tw.add(lv, acc, F[std::uint64_t{1} << i]);
            xx &= xx - 1;
        }
        if (acc != F[x]) return false;
    }
    return true;
}

inline FuncClass classify(const FieldTower& tw, const FuncSpec& f) {
    if (tw.q() != 2) throw domain_error("classification requires q = 2");
    const std::uint32_t m = tw.m();
    if (has_vectorial_view(f)) {
        auto F = vectorial_table(tw, f);
        if (is_linear_table(tw, F, true)) return FuncClass::Linear;
        if (m % 2 == 1) {
            auto ws = walsh_spectrum(tw, f);
            const long long peak = 1LL << ((m + 1) / 2);
            bool ab = true;
            for (const auto& [v, cnt] : ws.histogram)
                if (v != 0 && v != peak && v != -peak) {
                    ab = false;
                    break;
                }
            if (ab) return FuncClass::AlmostBent;
        }
        return FuncClass::Other;
    }
    auto g = value_table(tw, f);
    if (is_linear_table(tw, g, false)) return FuncClass::Linear;
    if (m % 2 == 0) {
        auto ws = walsh_spectrum(tw, f);
        const long long peak = 1LL << (m / 2);
        bool bent = true;
        for (const auto& [v, cnt] : ws.histogram)
            if (v != peak && v != -peak) {
                bent = false;
                break;
            }
        if (bent) return FuncClass::Bent;
    }
    return FuncClass::Other;
}

// Sets the classification flags after explicit verification; flags are
// never set any other way.
inline void classify_and_flag(const FieldTower& tw, FuncSpec& f) {
    FuncClass c = classify(tw, f);
    f.is_almost_bent = (c == FuncClass::AlmostBent);
    f.is_bent = (c == FuncClass::Bent);
}

struct AbMonomial {
    std::uint64_t t;
    std::string family;
};

// Known almost bent monomial exponents on F_{2^m}, m odd.
inline std::vector<AbMonomial> ab_monomial_catalogue(std::uint32_t m) {
    if (m % 2 == 0 || m < 3) throw domain_error("almost bent monomials need odd m >= 3");
    std::vector<AbMonomial> out;
    auto push = [&](std::uint64_t t, const std::string& name) {
        for (auto& e : out)
            if (e.t == t) {
                e.family += "/" + name;
                return;
            }
        out.push_back({t, name});
    };
    for (std::uint32_t r = 1; 2 * r < m; ++r)
        if (std::gcd(r, m) == 1) push((std::uint64_t{1} << r) + 1, "Gold(r=" + std::to_string(r) + ")");
    for (std::uint32_t r = 2; 2 * r < m; ++r)
        if (std::gcd(r, m) == 1)
            push((std::uint64_t{1} << (2 * r)) - (std::uint64_t{1} << r) + 1,
                 "Kasami(r=" + std::to_string(r) + ")");
    push((std::uint64_t{1} << ((m - 1) / 2)) + 3, "Welch");
    if (m % 4 == 1)
        push((std::uint64_t{1} << ((m - 1) / 2)) + (std::uint64_t{1} << ((m - 1) / 4)) - 1, "Niho");
    if (m % 4 == 3)
        push((std::uint64_t{1} << ((m - 1) / 2)) + (std::uint64_t{1} << ((3 * m - 1) / 4)) - 1,
             "Niho");
    return out;
}

}  // namespace funclib
}  // namespace fwc

#endif
