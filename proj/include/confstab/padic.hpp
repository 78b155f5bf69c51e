#pragma once

// p-adic and l-adic valuations on arbitrary-precision integers, and the
// valuation identities behind stable-homology periodicity.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confstab/integer.hpp"

namespace confstab {

/// Exponent of a prime in an integer. The valuation of zero is the
/// distinguished value infinity, ordered above every finite value.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(std::uint64_t v) : finite_(true), value_(v) {}

    static constexpr Valuation infinity() { return Valuation(Tag{}); }

    constexpr bool is_infinite() const { return !finite_; }
    constexpr bool is_finite() const { return finite_; }

    std::uint64_t value() const {
        if (!finite_) throw InvalidArgument("valuation is infinite");
        return value_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (!a.finite_ || !b.finite_) {
            return static_cast<int>(!a.finite_) <=> static_cast<int>(!b.finite_);
        }
        return a.value_ <=> b.value_;
    }

    friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }
    friend constexpr Valuation operator+(const Valuation& a, std::uint64_t b) {
        return a + Valuation(b);
    }

    std::string str() const { return finite_ ? std::to_string(value_) : "inf"; }

private:
    struct Tag {};
    constexpr explicit Valuation(Tag) : finite_(false), value_(0) {}

    bool finite_ = true;
    std::uint64_t value_ = 0;
};

inline void require_prime(const Integer& p) {
    if (!is_prime(p)) throw InvalidArgument(p.str() + " is not prime");
}

inline void require_odd_prime(const Integer& p) {
    require_prime(p);
    if (p == 2) throw InvalidArgument("an odd prime is required, got 2");
}

namespace detail {
inline Valuation val_unchecked(const Integer& p, Integer x) {
    if (x == 0) return Valuation::infinity();
    std::uint64_t e = 0;
    Integer q, r;
    for (;;) {
        boost::multiprecision::divide_qr(x, p, q, r);
        if (r != 0) break;
        x = std::move(q);
        ++e;
    }
    return Valuation(e);
}
}  // namespace detail

/// Largest e with p^e | x; infinity when x = 0.
inline Valuation val(const Integer& p, const Integer& x) {
    require_prime(p);
    return detail::val_unchecked(p, x);
}

/// A set of primes: either an explicit finite list, or "all primes except
/// a finite list". The empty finite set means rationalisation; the full
/// co-finite set means no localisation.
class PrimeSet {
public:
    static PrimeSet empty() { return PrimeSet(false, {}); }
    static PrimeSet all() { return PrimeSet(true, {}); }
    static PrimeSet of(std::vector<Integer> primes) { return PrimeSet(false, std::move(primes)); }
    static PrimeSet all_except(std::vector<Integer> excluded) { return PrimeSet(true, std::move(excluded)); }

    bool is_finite() const { return !cofinite_; }
    bool is_empty() const { return !cofinite_ && listed_.empty(); }
    bool is_all() const { return cofinite_ && listed_.empty(); }

    /// For a finite set, its members; for a co-finite set, the excluded primes.
    const std::vector<Integer>& listed() const { return listed_; }

    bool contains(const Integer& p) const {
        const bool in_list = std::binary_search(listed_.begin(), listed_.end(), p);
        return cofinite_ ? !in_list : in_list;
    }

    std::string str() const {
        if (is_empty()) return "EMPTY";
        if (is_all()) return "ALL";
        std::string s = cofinite_ ? "ALL\\{" : "{";
        for (std::size_t i = 0; i < listed_.size(); ++i) {
            if (i) s += ",";
            s += listed_[i].str();
        }
        return s + "}";
    }

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

private:
    PrimeSet(bool cofinite, std::vector<Integer> primes) : cofinite_(cofinite), listed_(std::move(primes)) {
        for (const auto& p : listed_) require_prime(p);
        std::sort(listed_.begin(), listed_.end());
        listed_.erase(std::unique(listed_.begin(), listed_.end()), listed_.end());
    }

    bool cofinite_ = false;
    std::vector<Integer> listed_;
};

/// Prime factorisation of |x| by trial division, x != 0.
inline std::vector<std::pair<Integer, std::uint64_t>> factorize(const Integer& x) {
    if (x == 0) throw InvalidArgument("cannot factor 0");
    std::vector<std::pair<Integer, std::uint64_t>> out;
    Integer rest = abs(x);
    for (Integer d = 2; d * d <= rest; d += (d == 2 ? 1 : 2)) {
        std::uint64_t e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (rest > 1) out.emplace_back(rest, 1);
    return out;
}

using ValuationVector = std::vector<std::pair<Integer, Valuation>>;

/// Componentwise valuations of x at the primes of ell. For a co-finite set
/// only the primes dividing x are listed (all others are zero).
inline ValuationVector val_set(const PrimeSet& ell, const Integer& x) {
    ValuationVector out;
    if (ell.is_finite()) {
        for (const auto& p : ell.listed()) out.emplace_back(p, detail::val_unchecked(p, x));
        return out;
    }
    if (x == 0) throw InvalidArgument("valuation vector of 0 over a co-finite prime set is unbounded");
    for (auto& [p, e] : factorize(x)) {
        if (ell.contains(p)) out.emplace_back(p, Valuation(e));
    }
    return out;
}

/// True when x and y have the same valuation at every prime of ell.
/// Zero has infinite valuation everywhere, so it is only equivalent to zero.
inline bool same_valuations(const PrimeSet& ell, const Integer& x, const Integer& y) {
    if (ell.is_finite()) {
        for (const auto& p : ell.listed()) {
            if (detail::val_unchecked(p, x) != detail::val_unchecked(p, y)) return false;
        }
        return true;
    }
    if (x == 0 || y == 0) return x == 0 && y == 0;
    // Strip the excluded primes; what is left is the ell-part up to sign.
    Integer a = abs(x), b = abs(y);
    for (const auto& q : ell.listed()) {
        while (a % q == 0) a /= q;
        while (b % q == 0) b /= q;
    }
    return a == b;
}

/// min{ (2k - chi)_p, (chi)_p + 1 }, the quantity on which stable mod-p
/// homology of an even-dimensional closed manifold depends.
inline Valuation stable_invariant(const Integer& chi, const Integer& p, const Integer& k) {
    require_odd_prime(p);
    if (k < 1) throw InvalidArgument("k must be positive");
    return std::min(detail::val_unchecked(p, 2 * k - chi), detail::val_unchecked(p, chi) + 1);
}

/// p^{(chi)_p + 1}: a period of stable_invariant(chi, p, .).
inline Integer period(const Integer& chi, const Integer& p) {
    require_odd_prime(p);
    if (chi == 0) throw InvalidArgument("period is undefined for chi = 0");
    return pow(p, detail::val_unchecked(p, chi).value() + 1);
}

/// Upper bound on the number of stable homologies; nullopt means unbounded.
inline std::optional<Integer> nsh_bound(const Integer& chi, const Integer& p) {
    require_prime(p);
    if (mod(chi, p) == 1) return Integer(1);
    if (chi == 0) return std::nullopt;
    return Integer(detail::val_unchecked(p, chi).value() + 2);
}

}  // namespace confstab
