#pragma once

// Decides when homology of C_k(M) and C_j(M) agrees in a range for closed M,
// and builds explicit chains of replication moves and zigzags realising it.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "confstab/coefficients.hpp"
#include "confstab/conf_algebra.hpp"
#include "confstab/degree_calculus.hpp"

namespace confstab::oracle {

struct Verdict {
    bool iso_guaranteed = false;
    std::string invariant_k;
    std::string invariant_j;
    std::string range = "STABLE_RANGE";
    std::optional<std::int64_t> range_bound;
    std::string basis;
    bool sharp = false;     // non-isomorphism is also proven (S^2, degree 1)
    bool footnote = false;  // the rational exception at 2k = chi is involved
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string valuation_string(const PrimeSet& ell, const Integer& x) {
    if (x == 0) return "inf";
    std::string s = "[";
    bool first = true;
    for (const auto& [p, e] : val_set(ell, x)) {
        if (!first) s += ",";
        first = false;
        s += "(" + p.str() + "," + e.str() + ")";
    }
    return s + "]";
}

inline Verdict by_equality(std::string inv_k, std::string inv_j, std::string basis) {
    Verdict v;
    v.iso_guaranteed = inv_k == inv_j;
    v.invariant_k = std::move(inv_k);
    v.invariant_j = std::move(inv_j);
    v.basis = std::move(basis);
    return v;
}

inline Verdict always(std::string basis) { return by_equality("-", "-", std::move(basis)); }

inline Verdict parity(const Integer& k, const Integer& j, std::string basis) {
    return by_equality("k mod 2 = " + mod(k, 2).str(), "k mod 2 = " + mod(j, 2).str(), std::move(basis));
}

// Theorem A for Z_(ell) on even n; the integral and Z[1/2] cases are the
// localisations at all primes and at all odd primes.
inline Verdict localised_even(const Integer& chi, const PrimeSet& ell, const Integer& k, const Integer& j,
                              std::string basis) {
    if (chi % 2 != 0 && ell.contains(2)) {
        throw NotAvailable("chi is odd, so 2 must be inverted for the even-dimensional comparison");
    }
    return by_equality("val_ell(2k-chi) = " + valuation_string(ell, 2 * k - chi),
                       "val_ell(2k-chi) = " + valuation_string(ell, 2 * j - chi), std::move(basis));
}

inline Valuation min_invariant(const Integer& chi, const Integer& p, const Integer& k) {
    return std::min(val(p, 2 * k - chi), val(p, chi) + 1);
}

}  // namespace detail

/// True when the rule that fired needs the replication range lambda rather
/// than the stable range.
inline bool uses_replication_range(const ManifoldDescriptor& m, const CoefficientSpec& c) {
    return m.n() % 2 == 0 && c.kind() == CoefficientSpec::Kind::PrimeField;
}

inline Verdict oracle(const ManifoldDescriptor& m, const CoefficientSpec& coeff, const Integer& k, const Integer& j,
                      const std::optional<algebra::RangeFn>& mu_fn = std::nullopt) {
    using K = CoefficientSpec::Kind;
    if (!m.closed()) throw Unsupported("manifold is open: classical stabilisation applies instead");
    if (k < 0 || j < 0) throw InvalidArgument("k and j must be non-negative");
    const Integer& chi = m.chi();
    Verdict v;

    if (m.n() % 2 != 0) {
        const bool two_inverted = coeff.two_invertible();
        if (two_inverted) {
            v = detail::always("odd-dim/2-inverted");
        } else if (degree::parity_change_possible(m.n())) {
            v = detail::always("odd-dim/n-in-1-3-7");
        } else {
            v = detail::parity(k, j, "odd-dim/parity");
        }
    } else {
        switch (coeff.kind()) {
            case K::Rationals:
                v = detail::by_equality("2k=chi: " + detail::yes_no(2 * k == chi), "2k=chi: " + detail::yes_no(2 * j == chi),
                                        "even-dim/char-0");
                if (k == j) v.iso_guaranteed = true;
                v.footnote = (2 * k == chi) != (2 * j == chi);
                break;
            case K::Localised:
                if (coeff.primes().is_empty()) {
                    v = detail::by_equality("2k=chi: " + detail::yes_no(2 * k == chi),
                                            "2k=chi: " + detail::yes_no(2 * j == chi), "even-dim/char-0");
                    if (k == j) v.iso_guaranteed = true;
                    v.footnote = (2 * k == chi) != (2 * j == chi);
                } else {
                    if (k == j) {
                        v = detail::always("identity");
                        break;
                    }
                    v = detail::localised_even(chi, coeff.primes(), k, j, "even-dim/localised");
                }
                break;
            case K::Integers:
                if (k == j) {
                    v = detail::always("identity");
                    break;
                }
                v = detail::localised_even(chi, PrimeSet::all(), k, j, "even-dim/integral");
                break;
            case K::HalfInverted:
                v = detail::localised_even(chi, PrimeSet::all_except({2}), k, j, "even-dim/half-inverted");
                break;
            case K::PrimeField: {
                const Integer& p = coeff.prime();
                if (p != 2) {
                    if (mod(chi, p) == 1) {
                        v = detail::always("even-dim/p-odd/chi-1-mod-p");
                    } else if (mod(chi, p) != 0) {
                        v = detail::by_equality("p|2k-chi: " + detail::yes_no(mod(2 * k - chi, p) == 0),
                                                "p|2k-chi: " + detail::yes_no(mod(2 * j - chi, p) == 0),
                                                "even-dim/p-odd/chi-nonzero-mod-p");
                    } else {
                        v = detail::by_equality("min = " + detail::min_invariant(chi, p, k).str(),
                                                "min = " + detail::min_invariant(chi, p, j).str(),
                                                "even-dim/p-odd/min-invariant");
                    }
                } else {
                    const Valuation vchi = val(2, chi);
                    if (vchi == Valuation(1)) {
                        v = detail::parity(k, j, "even-dim/p-2/chi-val-1");
                    } else if (vchi >= Valuation(1)) {
                        v = detail::by_equality("min = " + std::min(val(2, k), vchi).str(),
                                                "min = " + std::min(val(2, j), vchi).str(),
                                                "even-dim/p-2/chi-even");
                    } else {
                        v = detail::by_equality("val_2(k) = " + val(2, k).str(), "val_2(k) = " + val(2, j).str(),
                                                "even-dim/p-2/val-k");
                    }
                }
                break;
            }
        }
        // On S^2 the guarantee is sharp in degree 1 away from characteristic 2.
        v.sharp = m.n() == 2 && chi == 2 && m.orientable() && coeff.two_invertible() &&
                  coeff.kind() != CoefficientSpec::Kind::Rationals;
    }

    if (mu_fn) {
        const std::int64_t kk = to_int64(k), jj = to_int64(j);
        if (uses_replication_range(m, coeff) && kk >= 1 && jj >= 1) {
            v.range_bound = std::min(algebra::lambda_range(*mu_fn, m.n(), 2, kk),
                                     algebra::lambda_range(*mu_fn, m.n(), 2, jj));
            v.range = "LAMBDA(k,j) <= " + std::to_string(*v.range_bound);
        } else {
            v.range_bound = std::min(algebra::nu_value(*mu_fn, kk), algebra::nu_value(*mu_fn, jj));
            v.range = "NU(k,j) <= " + std::to_string(*v.range_bound);
        }
    }
    return v;
}

/// Hypothesis of the replication isomorphism C_k -> C_rk over F_p.
inline bool theorem_e_applicable(const Integer& chi, const Integer& p, const Integer& r) {
    require_prime(p);
    if (r < 2) throw InvalidArgument("replication factor must be at least 2");
    return gcd(r, p) == 1 && mod((chi - 1) * (r - 1), p) == 0;
}

// ---------------------------------------------------------------------------
// Witness chains.

enum class MoveKind { EMove, AMove };

struct ChainMove {
    MoveKind kind = MoveKind::EMove;
    Integer from;
    Integer to;
    Integer r;  // replication factor for E moves
    std::optional<degree::ZigzagWitness> zigzag;
};

namespace detail {

inline ChainMove e_move(const Integer& from, const Integer& r) { return {MoveKind::EMove, from, from * r, r, {}}; }

inline ChainMove a_move(const Integer& chi, const Integer& p, const Integer& from, const Integer& to) {
    auto z = degree::zigzag(from, to, chi, PrimeSet::of({p}));
    if (!z) throw std::logic_error("expected zigzag is absent");
    return {MoveKind::AMove, from, to, Integer(1), std::move(z)};
}

// a, b both prime to p and p | chi - 1: replicate both up to a*b.
inline void join_units(std::vector<ChainMove>& out, const Integer& a, const Integer& b) {
    if (a == b) return;
    if (b != 1) out.push_back(e_move(a, b));
    if (a != 1) out.push_back(e_move(b, a));
}

inline Integer strip(const Integer& x, const Integer& p) {
    Integer y = x;
    while (y % p == 0) y /= p;
    return y;
}

inline Integer inverse_mod(const Integer& a, const Integer& p) {
    const Integer r = mod(a, p);
    for (Integer l = 1; l < p; ++l) {
        if (mod(l * r, p) == 1) return l;
    }
    throw InvalidArgument("no inverse modulo p");
}

}  // namespace detail

/// Replications and zigzags connecting k and j over F_p (n even, p odd);
/// absent when the oracle does not guarantee an isomorphism.
inline std::optional<std::vector<ChainMove>> witness_chain(const ManifoldDescriptor& m, const Integer& p,
                                                           const Integer& k, const Integer& j) {
    if (!m.closed()) throw Unsupported("witness chains need a closed manifold");
    if (m.n() % 2 != 0) throw InvalidArgument("witness chains are built for even n");
    require_odd_prime(p);
    if (k < 1 || j < 1) throw InvalidArgument("k and j must be positive");
    if (!oracle(m, CoefficientSpec::prime_field(p), k, j).iso_guaranteed) return std::nullopt;
    const Integer& chi = m.chi();
    std::vector<ChainMove> out;
    if (k == j) return out;

    if (mod(chi, p) == 1) {
        const bool k_div = k % p == 0, j_div = j % p == 0;
        if (k_div && j_div) {
            out.push_back(detail::a_move(chi, p, k, j));
        } else if (!k_div && !j_div) {
            detail::join_units(out, k, j);
        } else {
            const Integer& a = k_div ? k : j;  // the one in pZ
            const Integer& b = k_div ? j : k;
            Integer l = 1, h = a * b + chi;
            while (h < 2) h = a * b * ++l + chi;
            if (h != a) out.push_back(detail::a_move(chi, p, a, h));
            detail::join_units(out, h, b);
        }
        return out;
    }

    const Valuation vk = val(p, 2 * k - chi), vj = val(p, 2 * j - chi);
    if (vk == vj) {
        out.push_back(detail::a_move(chi, p, k, j));
        return out;
    }
    // Both valuations exceed (chi)_p, so k' and j' agree mod p.
    const Integer kp = detail::strip(k, p), jp = detail::strip(j, p);
    Integer l = detail::inverse_mod(kp, p);
    while (l * jp < 2 || l * kp < 2) l += p;
    out.push_back(detail::e_move(k, l * jp));
    out.push_back(detail::e_move(j, l * kp));
    return out;
}

/// Move-by-move check: hypotheses hold, degrees compose, and the moves
/// connect k to j.
inline bool validate_chain(const ManifoldDescriptor& m, const Integer& p, const Integer& k, const Integer& j,
                           const std::vector<ChainMove>& chain) {
    std::map<Integer, Integer> parent;
    auto find = [&](Integer x) {
        while (parent.count(x) && parent[x] != x) x = parent[x];
        return x;
    };
    auto unite = [&](const Integer& a, const Integer& b) {
        const Integer ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    };
    for (const auto& mv : chain) {
        if (mv.kind == MoveKind::EMove) {
            if (mv.r < 2 || !theorem_e_applicable(m.chi(), p, mv.r) || mv.to != mv.r * mv.from) return false;
        } else {
            if (!mv.zigzag || !degree::verify(*mv.zigzag)) return false;
            if (mv.zigzag->k != mv.from || mv.zigzag->j != mv.to || mv.zigzag->chi != m.chi()) return false;
            if (mv.zigzag->ell != PrimeSet::of({p})) return false;
        }
        unite(mv.from, mv.to);
    }
    return find(k) == find(j);
}

// ---------------------------------------------------------------------------
// Counting stable homologies.

/// The quantity the F_p oracle depends on for even n: constant when
/// chi = 1 mod p, the min-invariant otherwise.
inline Valuation effective_invariant(const Integer& chi, const Integer& p, const Integer& k) {
    require_odd_prime(p);
    if (mod(chi, p) == 1) return Valuation(0);
    return detail::min_invariant(chi, p, k);
}

/// Number of distinct effective invariants for k in [k_lo, k_hi].
inline std::size_t class_count(const Integer& chi, const Integer& p, const Integer& k_lo, const Integer& k_hi) {
    std::set<Valuation> seen;
    for (Integer k = k_lo; k <= k_hi; ++k) seen.insert(effective_invariant(chi, p, k));
    return seen.size();
}

}  // namespace confstab::oracle
