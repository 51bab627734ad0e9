#ifndef FWC_GALOIS_HPP
#define FWC_GALOIS_HPP

// Exact arithmetic in the tower F_p < F_q < F_{q^m} (q = p^l) with full
// exp/log tables, trace, norm, Frobenius and the quadratic character.
//
// Elements are encoded as integers: the little-endian coefficient vector
// over F_p packed base p.  An element of the mid field F_q therefore
// lives in [0, q), an element of the top field F_{q^m} in [0, q^m), and
// the embeddings F_p < F_q < F_{q^m} are the identity on encodings.
//
// Moduli are canonical: the mid field uses the Conway polynomial of
// F_{p^l}/F_p (computed, not tabulated); the top field uses the Conway
// polynomial of F_{p^m}/F_p when l = 1 and otherwise the least primitive
// monic polynomial of degree m over F_q in packed-encoding order.  The
// class of x is primitive in both quotients and is the generator of the
// log tables.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "fwc/common.hpp"

#include "json.hpp"

namespace fwc {

enum class Level { prime, mid, top };

inline const char* level_name(Level lv) {
    switch (lv) {
        case Level::prime: return "prime";
        case Level::mid: return "mid";
        default: return "top";
    }
}

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// --- dense polynomial helpers over F_p (coefficients 0..p-1) ---

using Poly = std::vector<std::uint32_t>;  // little-endian, no trailing zeros required

inline Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
    const std::size_t n = f.size() - 1;  // deg f, f monic
    while (a.size() > n) {
        std::uint32_t c = a.back();
        a.pop_back();
        if (c == 0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t v = a[a.size() - n + i] + std::uint64_t(c) * (p - f[i]) % p;
            a[a.size() - n + i] = static_cast<std::uint32_t>(v % p);
        }
    }
    a.resize(n, 0);
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(prod), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly r(f.size() - 1, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline bool poly_is_one(const Poly& a) {
    if (a.empty() || a[0] != 1) return false;
    return std::all_of(a.begin() + 1, a.end(), [](std::uint32_t c) { return c == 0; });
}

// x primitive in F_p[x]/(f)?  Implies f irreducible.
inline bool x_is_primitive(const Poly& f, std::uint32_t p) {
    if (f[0] == 0) return false;  // x not a unit
    const std::size_t n = f.size() - 1;
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < n; ++i) order *= p;
    order -= 1;
    Poly x{0, 1};
    if (n == 1) x = poly_mod(Poly{0, 1}, f, p);
    if (!poly_is_one(poly_powmod(x, order, f, p))) return false;
    for (std::uint64_t r : prime_factors(order))
        if (poly_is_one(poly_powmod(x, order / r, f, p))) return false;
    return true;
}

// Conway polynomial of F_{p^n}/F_p: minimal w.r.t. the standard ordering
// (lexicographic on (b_{n-1},...,b_0) with b_i the representative of
// (-1)^{n-i} a_i) among monic primitive polynomials compatible with the
// Conway polynomials of all proper subfields.
inline Poly conway_polynomial(std::uint32_t p, std::uint32_t n) {
    static std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> cache;
    auto key = std::make_pair(p, n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    std::vector<std::uint32_t> divisors;
    for (std::uint32_t d = 1; d < n; ++d)
        if (n % d == 0) divisors.push_back(d);
    std::vector<Poly> sub;
    sub.reserve(divisors.size());
    for (std::uint32_t d : divisors) sub.push_back(conway_polynomial(p, d));

    std::uint64_t pn = 1;
    for (std::uint32_t i = 0; i < n; ++i) pn *= p;

    std::uint64_t count = pn;  // tuples (b_{n-1},...,b_0)
    for (std::uint64_t w = 0; w < count; ++w) {
        // digits of w base p, most significant digit = b_{n-1}
        Poly f(n + 1, 0);
        f[n] = 1;
        std::uint64_t t = w;
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uint32_t b = static_cast<std::uint32_t>(t % p);
            t /= p;
            // b holds the representative of (-1)^{n-i} a_i
            std::uint32_t a = ((n - i) % 2 == 0) ? b : (p - b) % p;
            f[i] = a;
        }
        if (f[0] == 0) continue;
        if (!x_is_primitive(f, p)) continue;
        bool ok = true;
        for (std::size_t s = 0; s < divisors.size() && ok; ++s) {
            std::uint32_t d = divisors[s];
            std::uint64_t pd = 1;
            for (std::uint32_t i = 0; i < d; ++i) pd *= p;
            std::uint64_t e = (pn - 1) / (pd - 1);
            Poly xe = poly_powmod(Poly{0, 1}, e, f, p);
            // evaluate C_{p,d} at xe mod f
            Poly acc(n, 0);
            const Poly& c = sub[s];
            for (std::size_t i = c.size(); i-- > 0;) {
                acc = poly_mulmod(acc, xe, f, p);
                acc[0] = static_cast<std::uint32_t>((acc[0] + c[i]) % p);
            }
            ok = std::all_of(acc.begin(), acc.end(), [](std::uint32_t v) { return v == 0; });
        }
        if (ok) {
            cache[key] = f;
            return f;
        }
    }
    throw consistency_error("conway polynomial search exhausted (p=" + std::to_string(p) +
                            ", n=" + std::to_string(n) + ")");
}

}  // namespace detail

class FieldTower;

// Typed element handle.  Equality of encodings is equality of elements.
struct Elt {
    const FieldTower* tower = nullptr;
    Level level = Level::top;
    std::uint32_t enc = 0;

    friend bool operator==(const Elt& a, const Elt& b) {
        return a.tower == b.tower && a.level == b.level && a.enc == b.enc;
    }
    friend bool operator!=(const Elt& a, const Elt& b) { return !(a == b); }
};

class FieldTower {
  public:
    static constexpr std::uint64_t kTableCeiling = std::uint64_t{1} << 20;

    FieldTower(std::uint32_t p, std::uint32_t l, std::uint32_t m) : p_(p), l_(l), m_(m) {
        if (!detail::is_prime_u64(p)) throw domain_error("p must be prime");
        if (l == 0 || m == 0) throw domain_error("l and m must be positive");
        q_ = 1;
        for (std::uint32_t i = 0; i < l; ++i) {
            q_ *= p;
            if (q_ > kTableCeiling) throw resource_error("field exceeds table ceiling 2^20");
        }
        Q_ = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            Q_ *= q_;
            if (Q_ > kTableCeiling) throw resource_error("field exceeds table ceiling 2^20");
        }
        build_mid();
        build_top();
        build_trace_norm_tables();
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t l() const { return l_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t Q() const { return Q_; }

    std::uint64_t size(Level lv) const {
        switch (lv) {
            case Level::prime: return p_;
            case Level::mid: return q_;
            default: return Q_;
        }
    }

    const std::vector<std::uint32_t>& modulus_mid() const { return mod_mid_; }
    const std::vector<std::uint32_t>& modulus_top() const { return mod_top_; }

    // ----- raw operations on encodings -----

    std::uint32_t add(Level lv, std::uint32_t a, std::uint32_t b) const {
        check_enc(lv, a);
        check_enc(lv, b);
        if (p_ == 2) return a ^ b;
        return digit_add(a, b);
    }

    std::uint32_t neg(Level lv, std::uint32_t a) const {
        check_enc(lv, a);
        if (p_ == 2) return a;
        return digit_neg(a);
    }

    std::uint32_t sub(Level lv, std::uint32_t a, std::uint32_t b) const {
        return add(lv, a, neg(lv, b));
    }

    std::uint32_t mul(Level lv, std::uint32_t a, std::uint32_t b) const {
        check_enc(lv, a);
        check_enc(lv, b);
        if (a == 0 || b == 0) return 0;
        const Tables& t = tables(lv);
        std::uint64_t s = std::uint64_t(t.log[a]) + t.log[b];
        std::uint64_t g = size(lv) - 1;
        if (s >= g) s -= g;
        return t.exp[s];
    }

    std::uint32_t inv(Level lv, std::uint32_t a) const {
        check_enc(lv, a);
        if (a == 0) throw domain_error("inverse of zero");
        const Tables& t = tables(lv);
        std::uint64_t g = size(lv) - 1;
        std::uint64_t e = (g - t.log[a]) % g;
        return t.exp[e];
    }

    std::uint32_t div(Level lv, std::uint32_t a, std::uint32_t b) const {
        return mul(lv, a, inv(lv, b));
    }

    // Square-and-multiply; pow(0,0) = 1 by convention.
    std::uint32_t pow(Level lv, std::uint32_t a, std::uint64_t e) const {
        check_enc(lv, a);
        if (e == 0) return 1;
        if (a == 0) return 0;
        std::uint32_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(lv, r, base);
            base = mul(lv, base, base);
            e >>= 1;
        }
        return r;
    }

    std::uint32_t generator(Level lv) const {
        const Tables& t = tables(lv);
        return t.exp.size() > 1 ? t.exp[1] : 1;
    }

    std::uint64_t log(Level lv, std::uint32_t a) const {
        check_enc(lv, a);
        if (a == 0) throw domain_error("log of zero");
        return tables(lv).log[a];
    }

    std::uint32_t exp(Level lv, std::uint64_t e) const {
        return tables(lv).exp[e % (size(lv) - 1)];
    }

    // trace of the top field onto the mid field
    std::uint32_t trace_top_to_mid(std::uint32_t x) const {
        check_enc(Level::top, x);
        return trace_top_mid_[x];
    }

    std::uint32_t trace_to_prime(Level lv, std::uint32_t x) const {
        check_enc(lv, x);
        switch (lv) {
            case Level::prime: return x;
            case Level::mid: return trace_mid_prime_[x];
            default: return trace_mid_prime_[trace_top_mid_[x]];
        }
    }

    std::uint32_t norm_top_to_mid(std::uint32_t x) const {
        check_enc(Level::top, x);
        return norm_top_mid_[x];
    }

    std::uint32_t frobenius(std::uint32_t x) const {  // x -> x^q on the top field
        return pow(Level::top, x, q_);
    }

    // 0 on 0, +1 on nonzero squares, -1 otherwise; requires odd field size.
    int quadratic_character(Level lv, std::uint32_t x) const {
        if (size(lv) % 2 == 0) throw domain_error("quadratic character needs an odd field");
        check_enc(lv, x);
        if (x == 0) return 0;
        return (tables(lv).log[x] % 2 == 0) ? 1 : -1;
    }

    bool in_subfield(Level lv, std::uint32_t x) const {
        // constants of the polynomial basis are exactly the next field down
        switch (lv) {
            case Level::prime: return true;
            case Level::mid: return x < p_;
            default: return x < q_;
        }
    }

    // ----- typed API -----

    Elt elt(Level lv, std::uint64_t enc) const {
        if (enc >= size(lv)) throw structural_error("encoding out of range");
        return Elt{this, lv, static_cast<std::uint32_t>(enc)};
    }
    Elt zero(Level lv) const { return Elt{this, lv, 0}; }
    Elt one(Level lv) const { return Elt{this, lv, 1}; }

    Elt add(const Elt& a, const Elt& b) const {
        check_same(a, b);
        return Elt{this, a.level, add(a.level, a.enc, b.enc)};
    }
    Elt sub(const Elt& a, const Elt& b) const {
        check_same(a, b);
        return Elt{this, a.level, sub(a.level, a.enc, b.enc)};
    }
    Elt mul(const Elt& a, const Elt& b) const {
        check_same(a, b);
        return Elt{this, a.level, mul(a.level, a.enc, b.enc)};
    }
    Elt inv(const Elt& a) const {
        check_mine(a);
        return Elt{this, a.level, inv(a.level, a.enc)};
    }
    Elt pow(const Elt& a, std::uint64_t e) const {
        check_mine(a);
        return Elt{this, a.level, pow(a.level, a.enc, e)};
    }
    Elt trace(const Elt& x) const {
        check_mine(x);
        if (x.level != Level::top) throw structural_error("trace expects a top-field element");
        return Elt{this, Level::mid, trace_top_to_mid(x.enc)};
    }
    Elt norm(const Elt& x) const {
        check_mine(x);
        if (x.level != Level::top) throw structural_error("norm expects a top-field element");
        return Elt{this, Level::mid, norm_top_to_mid(x.enc)};
    }
    int quadratic_character(const Elt& x) const {
        check_mine(x);
        return quadratic_character(x.level, x.enc);
    }

    std::vector<Elt> enumerate(Level lv) const {
        std::vector<Elt> out;
        out.reserve(size(lv));
        for (std::uint64_t e = 0; e < size(lv); ++e) out.push_back(Elt{this, lv, static_cast<std::uint32_t>(e)});
        return out;
    }

    // Descriptor JSON pins the exact field a report was computed over.
    nlohmann::json descriptor() const {
        return nlohmann::json{{"p", p_},
                              {"l", l_},
                              {"m", m_},
                              {"modulus_mid", mod_mid_},
                              {"modulus_top", mod_top_}};
    }

    static FieldTower from_descriptor(const nlohmann::json& j) {
        FieldTower t(j.at("p").get<std::uint32_t>(), j.at("l").get<std::uint32_t>(),
                     j.at("m").get<std::uint32_t>());
        if (j.contains("modulus_mid") &&
            j.at("modulus_mid").get<std::vector<std::uint32_t>>() != t.mod_mid_)
            throw structural_error("descriptor modulus_mid differs from the canonical modulus");
        if (j.contains("modulus_top") &&
            j.at("modulus_top").get<std::vector<std::uint32_t>>() != t.mod_top_)
            throw structural_error("descriptor modulus_top differs from the canonical modulus");
        return t;
    }

    // mid-field coordinates of a top element w.r.t. the polynomial basis
    std::uint32_t top_coord(std::uint32_t x, std::uint32_t i) const {
        std::uint64_t v = x;
        for (std::uint32_t t = 0; t < i; ++t) v /= q_;
        return static_cast<std::uint32_t>(v % q_);
    }

    std::uint32_t top_from_coords(const std::vector<std::uint32_t>& c) const {
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * q_ + c[i];
        return static_cast<std::uint32_t>(v);
    }

  private:
    struct Tables {
        std::vector<std::uint32_t> exp;  // size-1 entries, exp[i] = g^i
        std::vector<std::uint32_t> log;  // log[0] unused
    };

    std::uint32_t p_, l_, m_;
    std::uint64_t q_ = 0, Q_ = 0;
    std::vector<std::uint32_t> mod_mid_;  // over F_p, little-endian, monic, deg l
    std::vector<std::uint32_t> mod_top_;  // over F_q (encoded), little-endian, monic, deg m
    Tables prime_t_, mid_t_, top_t_;
    std::vector<std::uint32_t> trace_top_mid_, trace_mid_prime_, norm_top_mid_;

    std::uint32_t generator_of_mid() const { return mid_t_.exp.size() > 1 ? mid_t_.exp[1] : 1; }

    const Tables& tables(Level lv) const {
        switch (lv) {
            case Level::prime: return prime_t_;
            case Level::mid: return mid_t_;
            default: return top_t_;
        }
    }

    void check_enc(Level lv, std::uint32_t a) const {
        if (a >= size(lv)) throw structural_error("encoding out of range");
    }
    void check_mine(const Elt& a) const {
        if (a.tower != this) throw structural_error("element belongs to a different field tower");
    }
    void check_same(const Elt& a, const Elt& b) const {
        check_mine(a);
        check_mine(b);
        if (a.level != b.level) throw structural_error("operands live at different tower levels");
    }

    std::uint32_t digit_add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t r = 0, mult = 1;
        while (a || b) {
            std::uint32_t d = (a % p_ + b % p_) % p_;
            r += d * mult;
            mult *= p_;
            a /= p_;
            b /= p_;
        }
        return r;
    }

    std::uint32_t digit_neg(std::uint32_t a) const {
        std::uint32_t r = 0, mult = 1;
        while (a) {
            std::uint32_t d = a % p_;
            r += (d ? p_ - d : 0) * mult;
            mult *= p_;
            a /= p_;
        }
        return r;
    }

    // multiply a mid element (poly in x over F_p) by x, reduce mod mod_mid_
    std::uint32_t mid_mulx(std::uint32_t a) const {
        std::vector<std::uint32_t> c(l_ + 1, 0);
        for (std::uint32_t i = 0; i < l_; ++i) {
            c[i + 1] = a % p_;
            a /= p_;
        }
        std::uint32_t top = c[l_];
        std::uint32_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < l_; ++i) {
            std::uint64_t d = (c[i] + std::uint64_t(p_ - mod_mid_[i]) * top) % p_;
            r += static_cast<std::uint32_t>(d) * mult;
            mult *= p_;
        }
        return r;
    }

    void build_mid() {
        detail::Poly f = detail::conway_polynomial(p_, l_);
        mod_mid_.assign(f.begin(), f.end());

        prime_t_.exp.assign(p_ > 2 ? p_ - 1 : 1, 1);
        prime_t_.log.assign(p_, 0);
        // generator of F_p*: smallest primitive root
        if (p_ > 2) {
            std::uint32_t g = 0;
            for (std::uint32_t c = 2; c < p_; ++c) {
                bool prim = true;
                for (std::uint64_t r : detail::prime_factors(p_ - 1)) {
                    std::uint64_t e = (p_ - 1) / r, v = 1, b = c;
                    while (e) {
                        if (e & 1) v = v * b % p_;
                        b = b * b % p_;
                        e >>= 1;
                    }
                    if (v == 1) {
                        prim = false;
                        break;
                    }
                }
                if (prim) {
                    g = c;
                    break;
                }
            }
            std::uint64_t v = 1;
            for (std::uint32_t i = 0; i < p_ - 1; ++i) {
                prime_t_.exp[i] = static_cast<std::uint32_t>(v);
                prime_t_.log[v] = i;
                v = v * g % p_;
            }
        } else {
            prime_t_.exp = {1};
            prime_t_.log = {0, 0};
        }

        if (l_ == 1) {
            mid_t_ = prime_t_;
            return;
        }
        mid_t_.exp.assign(q_ - 1, 0);
        mid_t_.log.assign(q_, 0);
        std::uint32_t v = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            mid_t_.exp[i] = v;
            mid_t_.log[v] = static_cast<std::uint32_t>(i);
            v = mid_mulx(v);
        }
        if (v != 1) throw consistency_error("mid-field generator is not primitive");
    }

    // --- polynomials over the mid field, coefficients encoded ---

    std::vector<std::uint32_t> topmod_reduce(std::vector<std::uint32_t> a,
                                             const std::vector<std::uint32_t>& f) const {
        const std::size_t n = f.size() - 1;
        while (a.size() > n) {
            std::uint32_t c = a.back();
            a.pop_back();
            if (c == 0) continue;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint32_t t = mul(Level::mid, c, f[i]);
                a[a.size() - n + i] = sub(Level::mid, a[a.size() - n + i], t);
            }
        }
        a.resize(n, 0);
        return a;
    }

    std::vector<std::uint32_t> topmod_mul(const std::vector<std::uint32_t>& a,
                                          const std::vector<std::uint32_t>& b,
                                          const std::vector<std::uint32_t>& f) const {
        std::vector<std::uint32_t> prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = add(Level::mid, prod[i + j], mul(Level::mid, a[i], b[j]));
        }
        return topmod_reduce(std::move(prod), f);
    }

    bool topmod_is_one(const std::vector<std::uint32_t>& a) const {
        if (a.empty() || a[0] != 1) return false;
        return std::all_of(a.begin() + 1, a.end(), [](std::uint32_t c) { return c == 0; });
    }

    bool top_candidate_primitive(const std::vector<std::uint32_t>& f) const {
        if (f[0] == 0) return false;
        auto powx = [&](std::uint64_t e) {
            std::vector<std::uint32_t> r(m_, 0), base(m_, 0);
            r[0] = 1;
            if (m_ == 1)
                base = topmod_reduce({0, 1}, f);
            else
                base[1] = 1;
            while (e) {
                if (e & 1) r = topmod_mul(r, base, f);
                base = topmod_mul(base, base, f);
                e >>= 1;
            }
            return r;
        };
        if (!topmod_is_one(powx(Q_ - 1))) return false;
        for (std::uint64_t r : detail::prime_factors(Q_ - 1))
            if (topmod_is_one(powx((Q_ - 1) / r))) return false;
        return true;
    }

    std::uint32_t top_mulx(std::uint32_t a) const {
        std::vector<std::uint32_t> c(m_ + 1, 0);
        std::uint64_t v = a;
        for (std::uint32_t i = 0; i < m_; ++i) {
            c[i + 1] = static_cast<std::uint32_t>(v % q_);
            v /= q_;
        }
        std::uint32_t top = c[m_];
        std::uint64_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint32_t d = sub(Level::mid, c[i], mul(Level::mid, top, mod_top_[i]));
            r += std::uint64_t(d) * mult;
            mult *= q_;
        }
        return static_cast<std::uint32_t>(r);
    }

    void build_top() {
        if (m_ == 1) {
            // y - g with g the mid generator; the top field is the mid field
            mod_top_ = {sub(Level::mid, 0, generator_of_mid()), 1};
            top_t_ = mid_t_;
            return;
        }
        if (l_ == 1) {
            detail::Poly f = detail::conway_polynomial(p_, m_);
            mod_top_.assign(f.begin(), f.end());
        } else {
            // least primitive monic polynomial in packed-encoding order
            bool found = false;
            std::vector<std::uint32_t> f(m_ + 1, 0);
            f[m_] = 1;
            std::uint64_t count = Q_;
            for (std::uint64_t w = 1; w < count; ++w) {
                std::uint64_t t = w;
                for (std::uint32_t i = 0; i < m_; ++i) {
                    f[i] = static_cast<std::uint32_t>(t % q_);
                    t /= q_;
                }
                if (f[0] == 0) continue;
                if (top_candidate_primitive(f)) {
                    found = true;
                    break;
                }
            }
            if (!found) throw consistency_error("no primitive top modulus found");
            mod_top_ = f;
        }

        top_t_.exp.assign(Q_ - 1, 0);
        top_t_.log.assign(Q_, 0);
        std::uint32_t v = 1;
        for (std::uint64_t i = 0; i < Q_ - 1; ++i) {
            top_t_.exp[i] = v;
            top_t_.log[v] = static_cast<std::uint32_t>(i);
            v = top_mulx(v);
        }
        if (v != 1) throw consistency_error("top-field generator is not primitive");
    }

    void build_trace_norm_tables() {
        trace_mid_prime_.assign(q_, 0);
        for (std::uint64_t x = 1; x < q_; ++x) {
            std::uint32_t s = 0;
            std::uint64_t e = mid_t_.log[x];
            std::uint64_t pe = 1;
            for (std::uint32_t i = 0; i < l_; ++i) {
                s = add(Level::mid, s, mid_t_.exp[(e * pe) % (q_ - 1)]);
                pe = pe * p_ % (q_ - 1);
            }
            if (s >= p_) throw consistency_error("trace left the prime field");
            trace_mid_prime_[x] = s;
        }

        trace_top_mid_.assign(Q_, 0);
        norm_top_mid_.assign(Q_, 0);
        const std::uint64_t norm_exp = (Q_ - 1) / (q_ - 1);
        for (std::uint64_t x = 1; x < Q_; ++x) {
            std::uint32_t s = 0;
            std::uint64_t e = top_t_.log[x];
            std::uint64_t qe = 1;
            for (std::uint32_t i = 0; i < m_; ++i) {
                s = add(Level::top, s, top_t_.exp[(e * qe) % (Q_ - 1)]);
                qe = qe * q_ % (Q_ - 1);
            }
            if (s >= q_) throw consistency_error("trace left the mid field");
            trace_top_mid_[x] = s;
            std::uint32_t nv = top_t_.exp[(e * norm_exp) % (Q_ - 1)];
            if (nv >= q_) throw consistency_error("norm left the mid field");
            norm_top_mid_[x] = nv;
        }
    }
};

}  // namespace fwc

#endif
