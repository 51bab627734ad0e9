#ifndef FWC_LINCODE_HPP
#define FWC_LINCODE_HPP

// Generic linear-code engine: row reduction, exhaustive weight
// distributions (incremental Gray enumeration cross-checked against plain
// re-encoding), duals, puncturing, the MacWilliams transform over exact
// big integers, Pless power moments, classical bounds, and Hermitian
// inner products.
//
// A LinearCode always lives over the top field of its own tower; q-ary
// codes derived from codes over F_{q^m} are rebased onto a (p, l, 1)
// tower, which carries identical encodings for F_q.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fwc/galois.hpp"

namespace fwc {

using Matrix = std::vector<std::vector<std::uint32_t>>;

struct WeightDistribution {
    std::uint64_t n = 0;
    std::uint64_t field_size = 0;
    std::vector<BigInt> counts;  // A_0 .. A_n

    BigInt total() const {
        BigInt s = 0;
        for (const auto& c : counts) s += c;
        return s;
    }

    // least positive weight with a codeword; 0 for the zero code
    std::uint64_t min_distance() const {
        for (std::size_t i = 1; i < counts.size(); ++i)
            if (counts[i] > 0) return i;
        return 0;
    }

    std::uint64_t dimension() const {
        BigInt t = total(), qk = 1;
        std::uint64_t k = 0;
        while (qk < t) {
            qk *= field_size;
            ++k;
        }
        if (qk != t) throw consistency_error("codeword count is not a power of the field size");
        return k;
    }

    std::string csv() const {
        std::ostringstream os;
        os << "weight,count\n";
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0) os << i << "," << counts[i].str() << "\n";
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0) arr.push_back({{"weight", i}, {"count", counts[i].str()}});
        return arr;
    }

    friend bool operator==(const WeightDistribution& a, const WeightDistribution& b) {
        return a.n == b.n && a.field_size == b.field_size && a.counts == b.counts;
    }
};

struct BoundVerdict {
    std::string name;  // Griesmer | Singleton | SpherePacking
    bool satisfied = false;
    bool meets_with_equality = false;
    BigInt slack = 0;
    std::string note;

    nlohmann::json to_json() const {
        nlohmann::json j{{"name", name},
                         {"satisfied", satisfied},
                         {"meets_with_equality", meets_with_equality},
                         {"slack", slack.str()}};
        if (!note.empty()) j["note"] = note;
        return j;
    }
};

struct RrefResult {
    Matrix rows;                        // reduced echelon basis, rank rows
    std::vector<std::uint32_t> pivots;  // pivot column of each basis row
};

inline RrefResult rank_and_rref(const FieldTower& fld, Matrix g) {
    const Level lv = Level::top;
    const std::size_t n = g.empty() ? 0 : g[0].size();
    for (const auto& row : g)
        if (row.size() != n) throw structural_error("ragged generator matrix");
    RrefResult out;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < g.size(); ++col) {
        std::size_t piv = r;
        while (piv < g.size() && g[piv][col] == 0) ++piv;
        if (piv == g.size()) continue;
        std::swap(g[r], g[piv]);
        std::uint32_t invp = fld.inv(lv, g[r][col]);
        for (std::size_t j = col; j < n; ++j) g[r][j] = fld.mul(lv, g[r][j], invp);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i == r || g[i][col] == 0) continue;
            std::uint32_t c = g[i][col];
            for (std::size_t j = col; j < n; ++j)
                g[i][j] = fld.sub(lv, g[i][j], fld.mul(lv, c, g[r][j]));
        }
        out.pivots.push_back(static_cast<std::uint32_t>(col));
        ++r;
    }
    g.resize(r);
    out.rows = std::move(g);
    return out;
}

class LinearCode {
  public:
    LinearCode(std::shared_ptr<const FieldTower> tower, Matrix generator)
        : tower_(std::move(tower)), gen_(std::move(generator)) {
        if (gen_.empty()) throw structural_error("empty generator matrix");
        n_ = gen_[0].size();
        for (const auto& row : gen_) {
            if (row.size() != n_) throw structural_error("ragged generator matrix");
            for (std::uint32_t e : row)
                if (e >= tower_->Q()) throw structural_error("matrix entry outside the field");
        }
        rref_ = rank_and_rref(*tower_, gen_);
    }

    const FieldTower& field() const { return *tower_; }
    std::shared_ptr<const FieldTower> tower() const { return tower_; }
    std::uint64_t q() const { return tower_->Q(); }
    std::size_t n() const { return n_; }
    std::size_t k() const { return rref_.rows.size(); }
    const Matrix& generator() const { return gen_; }
    const RrefResult& rref() const { return rref_; }

    bool same_row_space(const LinearCode& other) const {
        return n_ == other.n_ && q() == other.q() && rref_.rows == other.rref_.rows;
    }

  private:
    std::shared_ptr<const FieldTower> tower_;
    Matrix gen_;
    std::size_t n_ = 0;
    RrefResult rref_;
};

namespace lincode {

// ----- weight distribution -----

namespace detail {

// Loopless reflected mixed-radix Gray enumeration of all messages over
// `rows`, starting from the codeword `base`.  Exactly one message digit
// changes per step; the codeword is updated by one scaled row addition.
// Digit values are scalar encodings, so the step delta is the field
// difference of consecutive encodings, not a field "+-1".
inline void gray_tally(const FieldTower& fld, const Matrix& rows, std::vector<std::uint32_t> base,
                       std::vector<std::uint64_t>& counts, std::size_t* min_positive = nullptr) {
    const Level lv = Level::top;
    const std::uint32_t qq = static_cast<std::uint32_t>(fld.Q());
    const std::size_t k = rows.size(), n = base.size();
    // scaled rows: srow[j][s] = s * rows[j], so a step is n plain additions
    std::vector<std::vector<std::vector<std::uint32_t>>> srow(k);
    for (std::size_t i = 0; i < k; ++i) {
        srow[i].assign(qq, std::vector<std::uint32_t>(n));
        for (std::uint32_t s = 0; s < qq; ++s)
            for (std::size_t j = 0; j < n; ++j) srow[i][s][j] = fld.mul(lv, s, rows[i][j]);
    }
    std::vector<std::uint32_t> a(k, 0), f(k + 1);
    std::vector<int> o(k, 1);
    for (std::size_t j = 0; j <= k; ++j) f[j] = static_cast<std::uint32_t>(j);
    std::vector<std::uint32_t> c = std::move(base);
    while (true) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) w += (c[j] != 0);
        ++counts[w];
        if (min_positive && w > 0 && w < *min_positive) *min_positive = w;
        std::uint32_t j = f[0];
        f[0] = 0;
        if (j == k) break;
        std::uint32_t old_enc = a[j];
        a[j] = static_cast<std::uint32_t>(a[j] + o[j]);
        std::uint32_t delta = fld.sub(lv, a[j], old_enc);
        const auto& dr = srow[j][delta];
        for (std::size_t t = 0; t < n; ++t) c[t] = fld.add(lv, c[t], dr[t]);
        if (a[j] == 0 || a[j] == qq - 1) {
            o[j] = -o[j];
            f[j] = f[j + 1];
            f[j + 1] = j + 1;
        }
    }
}

inline std::vector<std::uint32_t> encode_message(const FieldTower& fld, const Matrix& rows,
                                                 const std::vector<std::uint32_t>& msg,
                                                 std::size_t n) {
    std::vector<std::uint32_t> c(n, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (msg[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            c[j] = fld.add(Level::top, c[j], fld.mul(Level::top, msg[i], rows[i][j]));
    }
    return c;
}

inline void plain_tally(const FieldTower& fld, const Matrix& rows, std::size_t n,
                        std::vector<std::uint64_t>& counts) {
    const std::uint64_t qq = fld.Q();
    const std::size_t k = rows.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= qq;
    std::vector<std::uint32_t> msg(k, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t t = idx;
        for (std::size_t i = 0; i < k; ++i) {
            msg[i] = static_cast<std::uint32_t>(t % qq);
            t /= qq;
        }
        auto c = encode_message(fld, rows, msg, n);
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) w += (c[j] != 0);
        ++counts[w];
    }
}

}  // namespace detail

inline WeightDistribution weight_distribution(const LinearCode& C,
                                              std::uint64_t budget = enumeration_budget(),
                                              unsigned threads = 1) {
    const FieldTower& fld = C.field();
    const std::uint64_t qq = fld.Q();
    const std::size_t k = C.k(), n = C.n();

    long double words = 1;
    for (std::size_t i = 0; i < k; ++i) words *= qq;
    if (words > static_cast<long double>(budget))
        throw resource_error("enumeration budget exceeded: q^k > " + std::to_string(budget) +
                             " (budget; override with FWC_BUDGET)");
    const std::uint64_t total = static_cast<std::uint64_t>(words + 0.5);

    const Matrix& rows = C.rref().rows;
    std::vector<std::uint64_t> counts(n + 1, 0);
    std::size_t running_min = n + 1;  // independent minimum-weight tally

    if (threads <= 1 || total < (std::uint64_t{1} << 16) || k == 0) {
        detail::gray_tally(fld, rows, std::vector<std::uint32_t>(n, 0), counts, &running_min);
    } else {
        // split on the leading digits; merge exact per-chunk tallies
        std::size_t dsplit = 0;
        std::uint64_t chunks = 1;
        while (dsplit < k && chunks < 4 * threads) {
            chunks *= qq;
            ++dsplit;
        }
        const std::size_t klow = k - dsplit;
        std::vector<std::future<std::pair<std::vector<std::uint64_t>, std::size_t>>> futs;
        for (unsigned tid = 0; tid < threads; ++tid) {
            futs.push_back(std::async(std::launch::async, [&, tid] {
                std::vector<std::uint64_t> local(n + 1, 0);
                std::size_t local_min = n + 1;
                Matrix low(rows.begin(), rows.begin() + klow);
                std::vector<std::uint32_t> msg(k, 0);
                for (std::uint64_t ch = tid; ch < chunks; ch += threads) {
                    std::uint64_t t = ch;
                    std::fill(msg.begin(), msg.end(), 0);
                    for (std::size_t i = klow; i < k; ++i) {
                        msg[i] = static_cast<std::uint32_t>(t % qq);
                        t /= qq;
                    }
                    auto base = detail::encode_message(fld, rows, msg, n);
                    detail::gray_tally(fld, low, std::move(base), local, &local_min);
                }
                return std::make_pair(std::move(local), local_min);
            }));
        }
        for (auto& f : futs) {
            auto [local, local_min] = f.get();
            for (std::size_t i = 0; i <= n; ++i) counts[i] += local[i];
            running_min = std::min(running_min, local_min);
        }
    }

    // plain re-encoding must agree on small codes
    if (total <= (std::uint64_t{1} << 16)) {
        std::vector<std::uint64_t> check(n + 1, 0);
        detail::plain_tally(fld, rows, n, check);
        if (check != counts)
            throw consistency_error("incremental and re-encoding enumerations disagree");
    }

    WeightDistribution W;
    W.n = n;
    W.field_size = qq;
    W.counts.assign(counts.begin(), counts.end());
    if (W.counts[0] != 1) throw consistency_error("A_0 != 1");
    std::size_t from_counts = W.min_distance();
    std::size_t from_tally = (running_min == n + 1) ? 0 : running_min;
    if (from_counts != from_tally)
        throw consistency_error("minimum-distance tallies disagree");
    return W;
}

// ----- dual and puncture -----

inline LinearCode dual(const LinearCode& C) {
    if (C.n() > 4096) throw resource_error("dual construction capped at n = 4096");
    const FieldTower& fld = C.field();
    const auto& rr = C.rref();
    const std::size_t n = C.n(), k = C.k();
    std::vector<bool> is_pivot(n, false);
    for (std::uint32_t p : rr.pivots) is_pivot[p] = true;
    Matrix d;
    d.reserve(n - k);
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        std::vector<std::uint32_t> v(n, 0);
        v[j] = 1;
        for (std::size_t r = 0; r < k; ++r)
            v[rr.pivots[r]] = fld.sub(Level::top, 0, rr.rows[r][j]);
        d.push_back(std::move(v));
    }
    if (d.empty()) d.push_back(std::vector<std::uint32_t>(n, 0));  // zero code
    return LinearCode(C.tower(), std::move(d));
}

inline LinearCode puncture(const LinearCode& C, std::size_t i) {
    if (i >= C.n()) throw structural_error("puncture coordinate out of range");
    Matrix g = C.generator();
    for (auto& row : g) row.erase(row.begin() + static_cast<std::ptrdiff_t>(i));
    if (g[0].empty()) throw structural_error("cannot puncture to length zero");
    return LinearCode(C.tower(), std::move(g));
}

// ----- MacWilliams transform -----

inline std::vector<std::vector<BigInt>> pascal_triangle(std::size_t n) {
    std::vector<std::vector<BigInt>> C(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        C[i].assign(n + 1, 0);
        C[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j)
            C[i][j] = C[i - 1][j - 1] + ((j <= i - 1) ? C[i - 1][j] : BigInt(0));
    }
    return C;
}

// A_j of the dual from A_i of the code: exact Krawtchouk expansion.
inline WeightDistribution macwilliams_transform(const WeightDistribution& W, std::uint64_t k) {
    const std::uint64_t q = W.field_size;
    const std::size_t n = W.n;
    auto C = pascal_triangle(n);
    std::vector<BigInt> qm1pow(n + 1);
    qm1pow[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) qm1pow[i] = qm1pow[i - 1] * (q - 1);
    BigInt qk = 1;
    for (std::uint64_t i = 0; i < k; ++i) qk *= q;

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i <= n; ++i)
        if (W.counts[i] > 0) support.push_back(i);

    WeightDistribution D;
    D.n = n;
    D.field_size = q;
    D.counts.assign(n + 1, 0);
    for (std::size_t j = 0; j <= n; ++j) {
        BigInt sum = 0;
        for (std::size_t i : support) {
            BigInt kraw = 0;
            for (std::size_t h = 0; h <= std::min(i, j); ++h) {
                BigInt term = C[i][h] * C[n - i][j - h] * qm1pow[j - h];
                if (h % 2)
                    kraw -= term;
                else
                    kraw += term;
            }
            sum += W.counts[i] * kraw;
        }
        if (sum % qk != 0 || sum < 0)
            throw consistency_error("dual transform produced a non-integer or negative count");
        D.counts[j] = sum / qk;
    }
    if (D.counts[0] != 1) throw consistency_error("dual transform: A_0 != 1");
    return D;
}

// ----- Pless power moments -----

struct PlessResult {
    bool ok = true;
    int first_violated = -1;  // moment index 0..3
};

// Verifies the first four power moments of (A_i) against the dual prefix
// (A_0^perp .. A_3^perp); every identity is cleared of denominators.
inline PlessResult pless_check(const WeightDistribution& W, std::uint64_t k,
                               const std::array<BigInt, 4>& dual_prefix) {
    const BigInt q = W.field_size;
    const BigInt n = W.n;
    BigInt qk = 1;
    for (std::uint64_t i = 0; i < k; ++i) qk *= q;
    const BigInt& A1 = dual_prefix[1];
    const BigInt& A2 = dual_prefix[2];
    const BigInt& A3 = dual_prefix[3];

    BigInt s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    for (std::size_t j = 0; j < W.counts.size(); ++j) {
        const BigInt& a = W.counts[j];
        if (a == 0) continue;
        BigInt jj = j;
        s0 += a;
        s1 += jj * a;
        s2 += jj * jj * a;
        s3 += jj * jj * jj * a;
    }

    auto fail = [](int idx) { return PlessResult{false, idx}; };
    if (s0 != qk) return fail(0);
    if (q * s1 != qk * (q * n - n - A1)) return fail(1);
    {
        BigInt rhs = qk * ((q - 1) * n * (q * n - n + 1) -
                           (2 * q * n - q - 2 * n + 2) * A1 + 2 * A2);
        if (q * q * s2 != rhs) return fail(2);
    }
    {
        BigInt rhs =
            qk * ((q - 1) * n *
                      (q * q * n * n - 2 * q * n * n + 3 * q * n - q + n * n - 3 * n + 2) -
                  (3 * q * q * n * n - 3 * q * q * n - 6 * q * n * n + 12 * q * n + q * q -
                   6 * q + 3 * n * n - 9 * n + 6) *
                      A1 +
                  6 * (q * n - q - n + 2) * A2 - 6 * A3);
        if (q * q * q * s3 != rhs) return fail(3);
    }
    return PlessResult{};
}

// ----- classical bounds -----

inline std::vector<BoundVerdict> bound_verdicts(std::uint64_t n, std::uint64_t k, std::uint64_t d,
                                                std::uint64_t q) {
    if (d < 1) throw domain_error("bound verdicts need d >= 1");
    std::vector<BoundVerdict> out;

    {
        BoundVerdict g{"Griesmer"};
        BigInt sum = 0, qi = 1;
        for (std::uint64_t i = 0; i < k; ++i) {
            sum += (BigInt(d) + qi - 1) / qi;
            qi *= q;
        }
        g.satisfied = BigInt(n) >= sum;
        g.slack = BigInt(n) - sum;
        g.meets_with_equality = (g.slack == 0);
        out.push_back(std::move(g));
    }
    {
        BoundVerdict s{"Singleton"};
        BigInt defect = BigInt(n) + 1 - BigInt(k) - BigInt(d);
        s.satisfied = defect >= 0;
        s.slack = defect;
        s.meets_with_equality = (defect == 0);
        if (defect == 0) s.note = "MDS";
        else if (defect == 1) s.note = "almost MDS";
        out.push_back(std::move(s));
    }
    {
        BoundVerdict sp{"SpherePacking"};
        auto C = pascal_triangle(n);
        std::uint64_t t = (d - 1) / 2;
        BigInt ball = 0, qm1 = 1;
        for (std::uint64_t i = 0; i <= t; ++i) {
            ball += C[n][i] * qm1;
            qm1 *= (q - 1);
        }
        BigInt qn = 1, qk = 1;
        for (std::uint64_t i = 0; i < n; ++i) qn *= q;
        for (std::uint64_t i = 0; i < k; ++i) qk *= q;
        sp.satisfied = qn >= qk * ball;
        sp.slack = qn - qk * ball;
        sp.meets_with_equality = (sp.slack == 0);
        if (sp.meets_with_equality) sp.note = "perfect";
        out.push_back(std::move(sp));
    }
    return out;
}

// True when no [n, k, d+1] code can exist by the sphere-packing bound,
// i.e. d meets the sphere-packing limit for these n, k.
inline bool sphere_packing_optimal(std::uint64_t n, std::uint64_t k, std::uint64_t d,
                                   std::uint64_t q) {
    auto v = bound_verdicts(n, k, d + 1, q);
    return !v[2].satisfied;
}

// ----- Hermitian inner product -----

inline bool hermitian_self_orthogonal(const LinearCode& C) {
    const FieldTower& fld = C.field();
    std::uint64_t Q = fld.Q(), s = 0;
    while ((s + 1) * (s + 1) <= Q) ++s;
    if (s * s != Q) throw domain_error("Hermitian product needs a square field size");
    const auto& g = C.generator();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            std::uint32_t acc = 0;
            for (std::size_t t = 0; t < C.n(); ++t) {
                std::uint32_t conj = fld.pow(Level::top, g[j][t], s);
                acc = fld.add(Level::top, acc, fld.mul(Level::top, g[i][t], conj));
            }
            if (acc != 0) return false;
        }
    return true;
}

// ----- hyperplane weight identity -----

// wt(uG) = n - #(H_u cap S) with S the column multiset of G.
inline bool hyperplane_weight_check(const LinearCode& C, const std::vector<std::uint32_t>& u) {
    const FieldTower& fld = C.field();
    const auto& g = C.generator();
    if (u.size() != g.size()) throw structural_error("message length mismatch");
    std::size_t wt = 0, on_hyperplane = 0;
    for (std::size_t j = 0; j < C.n(); ++j) {
        std::uint32_t acc = 0;
        for (std::size_t i = 0; i < g.size(); ++i)
            acc = fld.add(Level::top, acc, fld.mul(Level::top, u[i], g[i][j]));
        if (acc == 0)
            ++on_hyperplane;
        else
            ++wt;
    }
    return wt == C.n() - on_hyperplane;
}

// ----- plain-text matrix format -----

inline std::string write_matrix(const LinearCode& C) {
    std::ostringstream os;
    os << C.n() << " " << C.generator().size() << " " << C.field().descriptor().dump() << "\n";
    for (const auto& row : C.generator()) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << "\n";
    }
    return os.str();
}

inline LinearCode read_matrix(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw structural_error("empty matrix file");
    std::istringstream hs(header);
    std::size_t n = 0, rows = 0;
    if (!(hs >> n >> rows)) throw structural_error("matrix header must start with 'n k'");
    std::string fj;
    std::getline(hs, fj);
    auto tower = std::make_shared<FieldTower>(FieldTower::from_descriptor(nlohmann::json::parse(fj)));
    Matrix g(rows, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(is >> g[i][j])) throw structural_error("matrix body truncated");
    return LinearCode(std::move(tower), std::move(g));
}

inline LinearCode read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw structural_error("cannot open matrix file: " + path);
    return read_matrix(f);
}

}  // namespace lincode
}  // namespace fwc

#endif
