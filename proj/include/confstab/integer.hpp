#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace confstab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base of every error the library reports to callers. `kind()` is the
/// machine-readable tag surfaced by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

class NotAvailable : public Error {
public:
    explicit NotAvailable(const std::string& what) : Error("not-available", what) {}
};

class Unsupported : public Error {
public:
    explicit Unsupported(const std::string& what) : Error("unsupported", what) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error("range", what) {}
};

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// n / d for any nonzero d; the two-argument constructor rejects negative d.
inline Rational make_rational(const Integer& n, const Integer& d) {
    if (d == 0) throw InvalidArgument("zero denominator");
    return d < 0 ? Rational(Integer(-n), Integer(-d)) : Rational(n, d);
}

inline Integer gcd(Integer a, Integer b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline Integer pow(const Integer& base, std::uint64_t e) {
    Integer result = 1;
    for (std::uint64_t i = 0; i < e; ++i) result *= base;
    return result;
}

/// Floor division (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Non-negative remainder for positive modulus.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Trial-division primality; meant for desk-scale inputs only.
inline bool is_prime(const Integer& x) {
    if (x < 2) return false;
    if (x < 4) return true;
    if (x % 2 == 0) return false;
    for (Integer d = 3; d * d <= x; d += 2) {
        if (x % d == 0) return false;
    }
    return true;
}

inline bool fits_int64(const Integer& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& x) {
    if (!fits_int64(x)) throw InvalidArgument("integer " + x.str() + " exceeds 64-bit range");
    return static_cast<std::int64_t>(x);
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Parses a decimal integer, rejecting anything else (including empty input).
inline Integer parse_integer(const std::string& text) {
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
    if (i == text.size()) throw InvalidArgument("not an integer: '" + text + "'");
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9') throw InvalidArgument("not an integer: '" + text + "'");
    }
    return Integer(text[0] == '+' ? text.substr(1) : text);
}

}  // namespace confstab
