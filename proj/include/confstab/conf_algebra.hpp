#pragma once

// Mod-p homology of C_k(R^n) from its presentation as a free graded-commutative
// algebra on iterated Dyer-Lashof operations applied to iota and [iota,iota].
//
// Conventions: for p = 2 the algebra is polynomial on every generator; for p
// odd it is polynomial on even-degree generators and exterior on odd-degree
// ones. The weight (configuration degree) of a monomial is the k of C_k.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confstab/coefficients.hpp"

namespace confstab::algebra {

enum class Base { Iota, Bracket };

struct Bidegree {
    std::int64_t h = 0;   // homological degree
    std::int64_t nu = 0;  // configuration degree

    friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

inline void require_parameters(int n, int p) {
    if (n < 2) throw InvalidArgument("ambient dimension n must be at least 2");
    require_prime(p);
}

/// Q_{eps(1),I}(alpha) with alpha = iota or [iota,iota]. Only eps(1) is
/// stored; eps(j) for j >= 2 is fixed by the parity of i_j + i_{j-1}.
class Generator {
public:
    static Generator iota(int n, int p) { return make(Base::Iota, {}, 0, n, p); }
    static Generator bracket(int n, int p) { return make(Base::Bracket, {}, 0, n, p); }

    /// Validates every admissibility condition; throws InvalidArgument otherwise.
    static Generator make(Base base, std::vector<int> seq, int eps1, int n, int p) {
        require_parameters(n, p);
        if (eps1 != 0 && eps1 != 1) throw InvalidArgument("eps(1) must be 0 or 1");
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (seq[j] < 1 || seq[j] > n - 1) throw InvalidArgument("sequence entries must lie in [1, n-1]");
            if (j > 0 && seq[j] < seq[j - 1]) throw InvalidArgument("sequence must be weakly increasing");
        }
        if (seq.empty() && eps1 != 0) throw InvalidArgument("iota and [iota,iota] carry no eps");
        if (p == 2) {
            if (base == Base::Bracket) throw InvalidArgument("[iota,iota] is not a generator for p = 2");
            if (eps1 != 0) throw InvalidArgument("eps is identically 0 for p = 2");
        } else if (base == Base::Bracket) {
            if (n % 2 != 0) throw InvalidArgument("[iota,iota] is a generator only for even n");
            if (!seq.empty() && seq.back() % 2 == 0) throw InvalidArgument("last entry must be odd over [iota,iota]");
        } else if (!seq.empty() && seq.back() % 2 != 0) {
            throw InvalidArgument("last entry must be even over iota");
        }
        Generator g;
        g.base_ = base;
        g.seq_ = std::move(seq);
        g.eps1_ = eps1;
        g.n_ = n;
        g.p_ = p;
        return g;
    }

    Base base() const { return base_; }
    const std::vector<int>& seq() const { return seq_; }
    int eps1() const { return eps1_; }
    int n() const { return n_; }
    int p() const { return p_; }
    bool is_iota() const { return base_ == Base::Iota && seq_.empty(); }

    /// eps(j), 1-based.
    int eps(std::size_t j) const {
        if (p_ == 2) return 0;
        if (j == 1) return eps1_;
        return (seq_[j - 1] + seq_[j - 2]) % 2;
    }

    Bidegree bidegree() const {
        Bidegree d = base_ == Base::Iota ? Bidegree{0, 1} : Bidegree{n_ - 1, 2};
        for (std::size_t j = seq_.size(); j >= 1; --j) {
            d.h = p_ * d.h + static_cast<std::int64_t>(seq_[j - 1]) * (p_ - 1) - eps(j);
            d.nu *= p_;
        }
        return d;
    }

    /// Exterior generators square to zero: p odd and odd degree.
    bool is_exterior() const { return p_ != 2 && bidegree().h % 2 != 0; }

    std::string name() const {
        const std::string alpha = base_ == Base::Iota ? "iota" : "[iota,iota]";
        if (seq_.empty()) return alpha;
        std::string s = "Q_{" + std::to_string(eps1_) + ",(";
        for (std::size_t j = 0; j < seq_.size(); ++j) {
            if (j) s += ",";
            s += std::to_string(seq_[j]);
        }
        return s + ")}(" + alpha + ")";
    }

    /// Order: weight, then degree, then sequence, then eps(1), then base.
    friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
        const Bidegree da = a.bidegree(), db = b.bidegree();
        if (auto c = da.nu <=> db.nu; c != 0) return c;
        if (auto c = da.h <=> db.h; c != 0) return c;
        if (auto c = a.seq_ <=> b.seq_; c != 0) return c;
        if (auto c = a.eps1_ <=> b.eps1_; c != 0) return c;
        if (auto c = static_cast<int>(a.base_) <=> static_cast<int>(b.base_); c != 0) return c;
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.p_ <=> b.p_;
    }
    friend bool operator==(const Generator& a, const Generator& b) {
        return a.base_ == b.base_ && a.seq_ == b.seq_ && a.eps1_ == b.eps1_ && a.n_ == b.n_ && a.p_ == b.p_;
    }

private:
    Generator() = default;

    Base base_ = Base::Iota;
    std::vector<int> seq_;
    int eps1_ = 0;
    int n_ = 2;
    int p_ = 2;
};

/// A product of generators with positive exponents, kept in canonical order.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<Generator, int>> factors) : factors_(std::move(factors)) {
        std::sort(factors_.begin(), factors_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].second < 1) throw InvalidArgument("monomial exponents must be positive");
            if (i > 0 && factors_[i].first == factors_[i - 1].first) {
                throw InvalidArgument("repeated generator in monomial");
            }
        }
    }

    const std::vector<std::pair<Generator, int>>& factors() const { return factors_; }

    Bidegree bidegree() const {
        Bidegree d{0, 0};
        for (const auto& [g, e] : factors_) {
            const Bidegree gd = g.bidegree();
            d.h += gd.h * e;
            d.nu += gd.nu * e;
        }
        return d;
    }

    /// Non-zero in the free graded-commutative algebra.
    bool is_nonzero() const {
        return std::none_of(factors_.begin(), factors_.end(),
                            [](const auto& f) { return f.second > 1 && f.first.is_exterior(); });
    }

    /// Not divisible by iota, i.e. not in the image of stabilisation.
    bool is_inceptive() const {
        return std::none_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.first.is_iota(); });
    }

    std::string name() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& [g, e] : factors_) {
            if (!s.empty()) s += " ";
            s += g.name();
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::pair<Generator, int>> factors_;
};

namespace detail {
inline void monotone_sequences(int length, int lo, int hi, std::vector<int>& cur,
                               const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(cur.size()) == length) {
        emit(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        monotone_sequences(length, v, hi, cur, emit);
        cur.pop_back();
    }
}
}  // namespace detail

/// All generators of weight at most max_nu, each with its bidegree, in the
/// canonical generator order.
inline std::vector<std::pair<Generator, Bidegree>> enumerate_generators(int n, int p, std::int64_t max_nu) {
    require_parameters(n, p);
    std::vector<Generator> gens;
    std::vector<Base> bases{Base::Iota};
    if (p != 2 && n % 2 == 0) bases.push_back(Base::Bracket);
    for (Base base : bases) {
        const std::int64_t nu0 = base == Base::Iota ? 1 : 2;
        std::int64_t nu = nu0;
        for (int len = 0; nu <= max_nu; ++len, nu *= p) {
            std::vector<int> cur;
            detail::monotone_sequences(len, 1, n - 1, cur, [&](const std::vector<int>& seq) {
                if (p != 2 && !seq.empty()) {
                    const bool last_even = seq.back() % 2 == 0;
                    if (last_even != (base == Base::Iota)) return;
                }
                const int eps_max = (p != 2 && !seq.empty()) ? 1 : 0;
                for (int e = 0; e <= eps_max; ++e) gens.push_back(Generator::make(base, seq, e, n, p));
            });
            if (nu > std::numeric_limits<std::int64_t>::max() / p) break;
        }
    }
    std::sort(gens.begin(), gens.end());
    std::vector<std::pair<Generator, Bidegree>> out;
    out.reserve(gens.size());
    for (auto& g : gens) {
        const Bidegree d = g.bidegree();
        out.emplace_back(std::move(g), d);
    }
    return out;
}

/// dim H_i(C_k(R^n); F_p) for 0 <= i <= i_max, by counting monomials of
/// weight exactly k. Counts are exact; overflow of 64 bits throws.
inline std::vector<std::uint64_t> dims(int n, int p, std::int64_t k, std::int64_t i_max) {
    require_parameters(n, p);
    if (k < 0) throw InvalidArgument("k must be non-negative");
    if (i_max < 0) throw InvalidArgument("i_max must be non-negative");
    const auto W = static_cast<std::size_t>(k), H = static_cast<std::size_t>(i_max);
    // table[w][h]
    std::vector<std::vector<std::uint64_t>> table(W + 1, std::vector<std::uint64_t>(H + 1, 0));
    table[0][0] = 1;
    auto add = [](std::uint64_t& into, std::uint64_t v) {
        if (into > std::numeric_limits<std::uint64_t>::max() - v) {
            throw std::overflow_error("dimension count exceeds 64 bits");
        }
        into += v;
    };
    for (const auto& [g, d] : enumerate_generators(n, p, k)) {
        if (d.h > i_max) continue;
        const auto gw = static_cast<std::size_t>(d.nu), gh = static_cast<std::size_t>(d.h);
        if (g.is_exterior()) {
            for (std::size_t w = W + 1; w-- > gw;) {
                for (std::size_t h = H + 1; h-- > gh;) add(table[w][h], table[w - gw][h - gh]);
            }
        } else {
            for (std::size_t w = gw; w <= W; ++w) {
                for (std::size_t h = gh; h <= H; ++h) add(table[w][h], table[w - gw][h - gh]);
            }
        }
    }
    return table[W];
}

struct InceptiveClasses {
    std::int64_t degree = 0;
    std::vector<Monomial> witnesses;
};

/// The lowest degree of an iota-free monomial of weight k, with every such
/// monomial at that degree; nullopt if no iota-free monomial has weight k.
inline std::optional<InceptiveClasses> first_inceptive(int n, int p, std::int64_t k) {
    require_parameters(n, p);
    if (k < 1) throw InvalidArgument("k must be positive");
    std::vector<std::pair<Generator, Bidegree>> gens;
    for (auto& gd : enumerate_generators(n, p, k)) {
        if (!gd.first.is_iota()) gens.push_back(std::move(gd));
    }
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    const std::size_t G = gens.size(), W = static_cast<std::size_t>(k);
    std::vector<char> exterior(G);
    for (std::size_t g = 0; g < G; ++g) exterior[g] = gens[g].first.is_exterior();

    // best[g][w]: minimal degree of a non-zero monomial in generators g.. of weight w.
    std::vector<std::vector<std::int64_t>> best(G + 1, std::vector<std::int64_t>(W + 1, kInf));
    best[G][0] = 0;
    for (std::size_t g = G; g-- > 0;) {
        const auto nu = static_cast<std::size_t>(gens[g].second.nu);
        const std::int64_t h = gens[g].second.h;
        for (std::size_t w = 0; w <= W; ++w) {
            std::int64_t v = best[g + 1][w];
            if (nu <= w) {
                const std::int64_t rest = exterior[g] ? best[g + 1][w - nu] : best[g][w - nu];
                if (rest < kInf) v = std::min(v, rest + h);
            }
            best[g][w] = v;
        }
    }
    if (best[0][W] >= kInf) return std::nullopt;

    InceptiveClasses out;
    out.degree = best[0][W];
    std::vector<std::pair<Generator, int>> current;
    // Walk only along optimal choices.
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t g, std::size_t w) {
        if (w == 0) {
            out.witnesses.emplace_back(current);
            return;
        }
        if (g == G) return;
        const std::int64_t target = best[g][w];
        const auto nu = static_cast<std::size_t>(gens[g].second.nu);
        const std::int64_t h = gens[g].second.h;
        const int max_e = exterior[g] ? 1 : static_cast<int>(w / nu);
        for (int e = max_e; e >= 1; --e) {
            const std::size_t used = nu * static_cast<std::size_t>(e);
            if (used > w) continue;
            const std::int64_t rest = best[g + 1][w - used];
            if (rest >= kInf || rest + h * e != target) continue;
            current.emplace_back(gens[g].first, e);
            walk(g + 1, w - used);
            current.pop_back();
        }
        if (best[g + 1][w] == target) walk(g + 1, w);
    };
    walk(0, W);
    return out;
}

// ---------------------------------------------------------------------------
// Audit of the tabulated first inceptive classes.

enum class AuditStatus { Match, Mismatch, TableNotApplicable };

inline const char* to_string(AuditStatus s) {
    switch (s) {
        case AuditStatus::Match: return "MATCH";
        case AuditStatus::Mismatch: return "MISMATCH";
        case AuditStatus::TableNotApplicable: return "TABLE_NOT_APPLICABLE";
    }
    return "?";
}

/// What the tabulated classification says for (p, n, k).
struct TablePrediction {
    int row = 0;                    // 1..6, or 0 when no row covers (p, n, k)
    bool predicts_class = false;    // false: "no inceptive class"
    std::string witness;            // as printed in the table, e.g. Q_{1,(2)}(iota)^a [iota,iota]^{m/2}
    std::int64_t degree = 0;        // tabulated degree (valid when realizable)
    std::optional<Monomial> monomial;  // the witness, when it is a non-zero monomial of weight k
    std::string not_applicable_reason;
};

namespace detail {
// Exponent of the form num/den; nullopt unless it is a non-negative integer.
inline std::optional<std::int64_t> exact_exponent(std::int64_t num, std::int64_t den) {
    if (num < 0 || num % den != 0) return std::nullopt;
    return num / den;
}
}  // namespace detail

inline TablePrediction table_prediction(int p, int n, std::int64_t k) {
    require_parameters(n, p);
    if (k < 1) throw InvalidArgument("k must be positive");
    TablePrediction t;
    const std::int64_t a = k / p, m = k % p;
    const std::int64_t q_degree = 2 * (p - 1) - 1;  // degree of Q_{1,(2)}(iota)
    const bool odd_k = k % 2 != 0;
    const bool mixed_rows = p != 2 && n % 2 == 0 && (n >= 6 || (n == 4 && (p == 3 || p == 5)));

    // Exponents of (Q_{0,(1)}(iota) or Q_{1,(2)}(iota), [iota,iota]) as fractions.
    std::int64_t e_q_num = 0, e_q_den = 1, e_b_num = 0, e_b_den = 1;
    if (p == 2) {
        if (!odd_k) {
            t.row = 1;
            t.witness = "Q_{0,(1)}(iota)^a";
            e_q_num = a;
            t.degree = a;
        }
    } else if (n % 2 != 0) {
        if (m == 0) {
            t.row = 2;
            t.witness = "Q_{1,(2)}(iota)^a";
            e_q_num = a;
            t.degree = a * q_degree;
        }
    } else if (mixed_rows) {
        if (odd_k && k >= p) {
            t.row = 3;
            t.witness = "Q_{1,(2)}(iota)^a [iota,iota]^{m_p(k)/2}";
            e_q_num = a;
            e_b_num = m;
            e_b_den = 2;
            t.degree = a * q_degree + (m % 2 == 0 ? (n - 1) * m / 2 : 0);
        } else if (!odd_k) {
            t.row = 4;
            t.witness = "Q_{1,(2)}(iota)^{a-1} [iota,iota]^{(p+m_p(k))/2}";
            e_q_num = a - 1;
            e_b_num = p + m;
            e_b_den = 2;
            t.degree = (a - 1) * q_degree + ((p + m) % 2 == 0 ? (n - 1) * (p + m) / 2 : 0);
        }
    } else if (n == 4) {
        if (!odd_k || k >= p) {
            t.row = 5;
            t.witness = "Q_{1,(2)}(iota)^{m_2(k)} [iota,iota]^{floor(k/2)}";
            e_q_num = k % 2;
            e_b_num = k / 2;
            t.degree = (k % 2) * q_degree + (n - 1) * (k / 2);
        }
    } else if (n == 2) {
        if (!odd_k) {
            t.row = 6;
            t.witness = "[iota,iota]^{k/2}";
            e_b_num = k;
            e_b_den = 2;
            t.degree = k / 2;
        }
    }
    if (t.row == 0) return t;
    t.predicts_class = true;

    const auto e_q = detail::exact_exponent(e_q_num, e_q_den);
    const auto e_b = detail::exact_exponent(e_b_num, e_b_den);
    if (!e_q || !e_b) {
        t.not_applicable_reason = "exponent is not a non-negative integer";
        return t;
    }
    std::vector<std::pair<Generator, int>> factors;
    if (*e_q > 0) {
        factors.emplace_back(p == 2 ? Generator::make(Base::Iota, {1}, 0, n, p)
                                    : Generator::make(Base::Iota, {2}, 1, n, p),
                             static_cast<int>(*e_q));
    }
    if (*e_b > 0) factors.emplace_back(Generator::bracket(n, p), static_cast<int>(*e_b));
    Monomial mono(std::move(factors));
    if (!mono.is_nonzero()) {
        t.not_applicable_reason = "witness has exponent >= 2 on an odd-degree generator";
        return t;
    }
    t.monomial = std::move(mono);
    return t;
}

struct AuditRecord {
    int p = 0;
    int n = 0;
    std::int64_t k = 0;
    TablePrediction prediction;
    std::optional<InceptiveClasses> computed;
    AuditStatus status = AuditStatus::Match;
    std::string detail;
};

inline AuditRecord table_audit(int p, int n, std::int64_t k) {
    AuditRecord r;
    r.p = p;
    r.n = n;
    r.k = k;
    r.prediction = table_prediction(p, n, k);
    r.computed = first_inceptive(n, p, k);
    const auto& t = r.prediction;
    if (!t.predicts_class) {
        r.status = r.computed ? AuditStatus::Mismatch : AuditStatus::Match;
        r.detail = r.computed ? "table predicts no inceptive class but one exists" : "no inceptive class";
        return r;
    }
    if (!t.monomial) {
        r.status = AuditStatus::TableNotApplicable;
        r.detail = t.not_applicable_reason;
        return r;
    }
    if (!r.computed) {
        r.status = AuditStatus::Mismatch;
        r.detail = "no iota-free monomial of this weight exists";
        return r;
    }
    const Bidegree d = t.monomial->bidegree();
    const bool weight_ok = d.nu == k;
    const bool degree_ok = r.computed->degree == t.degree && d.h == t.degree;
    const auto& w = r.computed->witnesses;
    const bool witness_ok = std::find(w.begin(), w.end(), *t.monomial) != w.end();
    if (weight_ok && degree_ok && witness_ok) {
        r.status = AuditStatus::Match;
        r.detail = "degree and witness agree";
    } else {
        r.status = AuditStatus::Mismatch;
        r.detail = !weight_ok ? "tabulated witness has the wrong weight"
                   : !degree_ok ? "first inceptive degree differs"
                                : "tabulated witness is not among the minimal-degree monomials";
    }
    return r;
}

// ---------------------------------------------------------------------------
// Stable ranges.

enum class RangeKind { Mu, Nu, Lambda };

/// A lower bound for a stable range as a total function of k.
class RangeFn {
public:
    RangeFn(RangeKind kind, std::string description, std::function<std::int64_t(std::int64_t)> fn,
            bool non_decreasing = true)
        : kind_(kind), description_(std::move(description)), fn_(std::move(fn)), non_decreasing_(non_decreasing) {}

    std::int64_t operator()(std::int64_t k) const { return fn_(k); }
    RangeKind kind() const { return kind_; }
    const std::string& description() const { return description_; }
    bool non_decreasing() const { return non_decreasing_; }

private:
    RangeKind kind_;
    std::string description_;
    std::function<std::int64_t(std::int64_t)> fn_;
    bool non_decreasing_;
};

/// mu(k) = slope * k + offset.
inline RangeFn linear_range(std::int64_t slope, std::int64_t offset) {
    std::string d = std::to_string(slope) + "k";
    if (offset) d += (offset > 0 ? "+" : "") + std::to_string(offset);
    return RangeFn(RangeKind::Mu, d, [=](std::int64_t k) { return slope * k + offset; }, slope >= 0);
}

inline RangeFn half_range(std::int64_t offset) {
    std::string d = "floor(k/2)";
    if (offset) d += (offset > 0 ? "+" : "") + std::to_string(offset);
    return RangeFn(RangeKind::Mu, d,
                   [=](std::int64_t k) { return (k >= 0 ? k / 2 : -((-k + 1) / 2)) + offset; });
}

struct RangeManifold {
    int n = 2;
    bool orientable = true;
};

/// Best proven lower bound for the stable range of stabilisation on an open
/// manifold; nullopt when no bound is known for the combination.
inline std::optional<RangeFn> mu(const CoefficientSpec& coeff, RangeManifold m, bool with_labels) {
    if (m.n < 2) return std::nullopt;
    const bool orientable_surface = m.n == 2 && m.orientable;
    using K = CoefficientSpec::Kind;
    switch (coeff.kind()) {
        case K::Integers:
            return with_labels ? half_range(-1) : half_range(0);
        case K::Rationals:
            return orientable_surface ? linear_range(1, -1) : linear_range(1, 0);
        case K::HalfInverted:
            if (m.n < 3) return std::nullopt;
            return with_labels ? linear_range(1, -1) : linear_range(1, 0);
        case K::PrimeField:
            if (with_labels) return std::nullopt;
            // Odd p in dimension >= 3 has slope one; otherwise the integral
            // bound carries over by universal coefficients.
            if (coeff.prime() != 2 && m.n >= 3) return linear_range(1, 0);
            return half_range(0);
        case K::Localised:
            return std::nullopt;
    }
    return std::nullopt;
}

/// nu(k) = min_{j >= k} mu(j). Exact for non-decreasing mu; otherwise the
/// minimum is taken over j in [k, k + horizon].
inline std::int64_t nu_value(const RangeFn& mu_fn, std::int64_t k, std::int64_t horizon = 256) {
    if (mu_fn.non_decreasing()) return mu_fn(k);
    std::int64_t v = mu_fn(k);
    for (std::int64_t j = k + 1; j <= k + horizon; ++j) v = std::min(v, mu_fn(j));
    return v;
}

inline RangeFn nu(const RangeFn& mu_fn) {
    return RangeFn(RangeKind::Nu, "nu[" + mu_fn.description() + "]",
                   [mu_fn](std::int64_t k) { return nu_value(mu_fn, k); }, true);
}

/// lambda(k) = min{ nu(k), nu(k-1) + n - 1, mu(rk - i) for i = 2..r }.
inline std::int64_t lambda_range(const RangeFn& mu_fn, int n, std::int64_t r, std::int64_t k) {
    if (r < 2) throw InvalidArgument("replication factor r must be at least 2");
    if (k < 1) throw InvalidArgument("k must be positive");
    std::int64_t v = std::min(nu_value(mu_fn, k), nu_value(mu_fn, k - 1) + n - 1);
    for (std::int64_t i = 2; i <= r; ++i) v = std::min(v, mu_fn(r * k - i));
    return v;
}

inline RangeFn lambda(const RangeFn& mu_fn, int n, std::int64_t r) {
    if (r < 2) throw InvalidArgument("replication factor r must be at least 2");
    return RangeFn(RangeKind::Lambda, "lambda[" + mu_fn.description() + "]",
                   [mu_fn, n, r](std::int64_t k) { return lambda_range(mu_fn, n, r, k); }, false);
}

}  // namespace confstab::algebra
