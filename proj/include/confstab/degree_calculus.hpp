#pragma once

// Degree bookkeeping for sections of the fibrewise compactified tangent
// bundle: affine degree actions, lifting obstructions and zigzag witnesses
// between path components of different degree.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "confstab/padic.hpp"

namespace confstab {

/// Dimension, Euler characteristic and the two flags every oracle needs.
class ManifoldDescriptor {
public:
    ManifoldDescriptor(int n, Integer chi, bool closed, bool orientable)
        : n_(n), chi_(std::move(chi)), closed_(closed), orientable_(orientable) {
        if (n < 1) throw InvalidArgument("dimension must be at least 1");
        if (closed && n % 2 != 0 && chi_ != 0) {
            throw InvalidArgument("a closed odd-dimensional manifold has Euler characteristic 0");
        }
    }

    static ManifoldDescriptor sphere(int n) { return ManifoldDescriptor(n, n % 2 == 0 ? 2 : 0, true, true); }

    int n() const { return n_; }
    const Integer& chi() const { return chi_; }
    bool closed() const { return closed_; }
    bool orientable() const { return orientable_; }

private:
    int n_;
    Integer chi_;
    bool closed_;
    bool orientable_;
};

namespace degree {

using Matrix2 = std::array<std::array<Rational, 2>, 2>;

inline Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
    Matrix2 c;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    }
    return c;
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline Integer to_integer(const Rational& q) {
    if (!is_integer(q)) throw InvalidArgument("degree " + to_string(q) + " is not an integer");
    return boost::multiprecision::numerator(q);
}

/// k -> r(k - d) + d with d a half-integer (the degree of the fixed section).
class AffineDegreeAction {
public:
    AffineDegreeAction(Integer r, Rational d) : r_(std::move(r)), d_(std::move(d)) {
        const Integer den = boost::multiprecision::denominator(d_);
        if (den != 1 && den != 2) throw InvalidArgument("fixed degree must have denominator 1 or 2");
    }

    const Integer& r() const { return r_; }
    const Rational& d() const { return d_; }

    Rational apply_rational(const Rational& k) const { return Rational(r_) * (k - d_) + d_; }

    /// Realised section degrees are integers; anything else is rejected.
    Integer apply(const Integer& k) const { return to_integer(apply_rational(Rational(k))); }

    /// (r1, d) o (r2, d) = (r1 r2, d); only actions with a common fixed point compose.
    AffineDegreeAction compose(const AffineDegreeAction& inner) const {
        if (d_ != inner.d_) throw InvalidArgument("actions with different fixed degrees do not compose");
        return AffineDegreeAction(r_ * inner.r_, d_);
    }

    friend bool operator==(const AffineDegreeAction&, const AffineDegreeAction&) = default;

private:
    Integer r_;
    Rational d_;
};

/// Intersection form on H_n of the fibrewise one-point compactified tangent
/// bundle, in the basis (fibre, zero section).
inline Matrix2 intersection_matrix(int n, const Integer& chi) {
    if (n < 1) throw InvalidArgument("dimension must be at least 1");
    return Matrix2{{{Rational(0), Rational(1)}, {Rational(n % 2 == 0 ? 1 : -1), Rational(chi)}}};
}

/// Coordinates of a section of degree k in the basis (fibre, zero section).
inline std::array<Integer, 2> section_class(const Integer& k, const Integer& chi) { return {k - chi, 1}; }

/// u^T M v.
inline Rational pairing(const std::array<Integer, 2>& u, const Matrix2& m, const std::array<Integer, 2>& v) {
    Rational s = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) s += Rational(u[i]) * m[i][j] * Rational(v[j]);
    }
    return s;
}

struct EndoData {
    Matrix2 matrix;
    AffineDegreeAction action;
};

/// Action on H_n of a fibrewise degree-r endomorphism fixing a section of degree d.
inline EndoData endo_matrix(const Integer& r, const Rational& d, const Integer& chi) {
    Matrix2 m{{{Rational(r), -Rational(r - 1) * (d - Rational(chi))}, {Rational(0), Rational(1)}}};
    return EndoData{m, AffineDegreeAction(r, d)};
}

/// Degree read off from section-class coordinates (x, 1): x + chi.
inline Rational degree_of(const std::array<Rational, 2>& coords, const Integer& chi) {
    if (coords[1] != 1) throw InvalidArgument("not a section class");
    return coords[0] + Rational(chi);
}

/// Obstruction to lifting a section of degree deg to the Stiefel bundle.
inline Integer lift_obstruction(const Integer& deg_sigma0, const Integer& chi) { return 2 * deg_sigma0 - chi; }

/// r is invertible in Z_(ell).
inline bool is_unit(const PrimeSet& ell, const Integer& r) {
    if (r == 0) return false;
    if (ell.is_finite()) {
        for (const auto& p : ell.listed()) {
            if (r % p == 0) return false;
        }
        return true;
    }
    return val_set(ell, r).empty();
}

/// The realisable affine actions on degrees for a closed manifold after
/// localisation at ell.
struct ActionFamily {
    PrimeSet ell = PrimeSet::empty();
    std::optional<Rational> fixed_degree;  // forced fixed point; absent when any integer works

    bool admits(const AffineDegreeAction& a) const {
        if (!is_unit(ell, a.r())) return false;
        if (fixed_degree) return a.d() == *fixed_degree;
        return is_integer(a.d());
    }

    std::string str() const {
        std::string s = "r unit in Z_(" + ell.str() + "), ";
        return s + (fixed_degree ? "d = " + to_string(*fixed_degree) : "d any integer");
    }
};

inline ActionFamily allowed_actions(const ManifoldDescriptor& m, const PrimeSet& ell) {
    if (!m.closed()) throw Unsupported("degree actions are only tabulated for closed manifolds");
    ActionFamily f;
    f.ell = ell;
    if (m.n() % 2 == 0) {
        if (m.chi() % 2 != 0 && ell.contains(2)) {
            throw NotAvailable("chi is odd and 2 is not inverted, so no section of degree chi/2 exists");
        }
        f.fixed_degree = Rational(m.chi(), 2);
    }
    return f;
}

/// Odd n: whether the integral parity change k -> k+1 is realisable.
inline bool parity_change_possible(int n) {
    if (n < 1 || n % 2 == 0) throw InvalidArgument("parity change is only defined for odd n");
    return n == 1 || n == 3 || n == 7;
}

/// On a sphere with trivialised bundle the action takes the form k -> rk + b.
struct SphereAction {
    Integer r;
    Integer b;

    Integer apply(const Integer& k) const { return r * k + b; }
    SphereAction compose(const SphereAction& inner) const { return {r * inner.r, r * inner.b + b}; }
};

// ---------------------------------------------------------------------------
// Zigzags.

enum class Side { FromK, FromJ };

inline const char* to_string(Side s) { return s == Side::FromK ? "FROM_K" : "FROM_J"; }

struct ZigzagMove {
    Side side;
    AffineDegreeAction action;
    PrimeSet localisation;
};

struct ZigzagWitness {
    Integer k;
    Integer j;
    Integer chi;
    PrimeSet ell = PrimeSet::empty();
    Integer h;
    std::vector<ZigzagMove> moves;
};

/// Recomputes both sides by exact composition and checks every r is a unit.
inline bool verify(const ZigzagWitness& w) {
    const Rational fixed(w.chi, 2);
    Rational from_k(w.k), from_j(w.j);
    for (const auto& mv : w.moves) {
        if (mv.action.d() != fixed || !is_unit(mv.localisation, mv.action.r())) return false;
        if (mv.side == Side::FromK) {
            from_k = mv.action.apply_rational(from_k);
        } else {
            from_j = mv.action.apply_rational(from_j);
        }
    }
    return is_integer(from_k) && from_k == Rational(w.h) && from_j == Rational(w.h);
}

/// The single-meeting-point witness: both 2k - chi and 2j - chi are scaled to
/// (2k - chi)(2j - chi)/m by ell-units. Absent when the ell-valuations differ.
inline std::optional<ZigzagWitness> zigzag(const Integer& k, const Integer& j, const Integer& chi,
                                           const PrimeSet& ell) {
    if (k < 0 || j < 0) throw InvalidArgument("degrees must be non-negative");
    if (chi % 2 != 0 && ell.contains(2)) throw NotAvailable("chi is odd and 2 is not inverted");
    ZigzagWitness w;
    w.k = k;
    w.j = j;
    w.chi = chi;
    w.ell = ell;
    const Rational fixed(chi, 2);
    if (k == j) {
        w.h = k;
        w.moves = {{Side::FromK, AffineDegreeAction(1, fixed), ell}, {Side::FromJ, AffineDegreeAction(1, fixed), ell}};
        return w;
    }
    const Integer x = 2 * k - chi, y = 2 * j - chi;
    if (!same_valuations(ell, x, y)) return std::nullopt;
    if (x == 0 || y == 0) return std::nullopt;
    Integer m = 1;
    for (const auto& [p, e] : val_set(ell, x)) m *= pow(p, e.value());
    const Integer r_k = y / m, r_j = x / m;
    const Integer twice_h = x * y / m + chi;
    if (twice_h % 2 != 0) throw std::logic_error("meeting degree is not an integer");
    w.h = twice_h / 2;
    w.moves = {{Side::FromK, AffineDegreeAction(r_k, fixed), ell}, {Side::FromJ, AffineDegreeAction(r_j, fixed), ell}};
    return w;
}

}  // namespace degree
}  // namespace confstab
