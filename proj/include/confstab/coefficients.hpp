#pragma once

#include <string>

#include "confstab/padic.hpp"

namespace confstab {

/// Coefficient ring for homology: Z, Z[1/2], Q, F_p or Z_(ell).
class CoefficientSpec {
public:
    enum class Kind { Integers, HalfInverted, Rationals, PrimeField, Localised };

    static CoefficientSpec integers() { return CoefficientSpec(Kind::Integers); }
    static CoefficientSpec half_inverted() { return CoefficientSpec(Kind::HalfInverted); }
    static CoefficientSpec rationals() { return CoefficientSpec(Kind::Rationals); }
    static CoefficientSpec prime_field(const Integer& p) {
        require_prime(p);
        CoefficientSpec c(Kind::PrimeField);
        c.prime_ = p;
        return c;
    }
    static CoefficientSpec localised(PrimeSet ell) {
        CoefficientSpec c(Kind::Localised);
        c.primes_ = std::move(ell);
        return c;
    }

    Kind kind() const { return kind_; }

    /// Characteristic of the ring (0 for everything but F_p).
    Integer characteristic() const { return kind_ == Kind::PrimeField ? prime_ : Integer(0); }

    const Integer& prime() const {
        if (kind_ != Kind::PrimeField) throw InvalidArgument("coefficient ring is not a prime field");
        return prime_;
    }
    const PrimeSet& primes() const {
        if (kind_ != Kind::Localised) throw InvalidArgument("coefficient ring is not a localisation");
        return primes_;
    }

    /// True when 2 is a unit in the ring.
    bool two_invertible() const {
        switch (kind_) {
            case Kind::Integers: return false;
            case Kind::HalfInverted:
            case Kind::Rationals: return true;
            case Kind::PrimeField: return prime_ != 2;
            case Kind::Localised: return !primes_.contains(2);
        }
        return false;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Integers: return "Z";
            case Kind::HalfInverted: return "Z[1/2]";
            case Kind::Rationals: return "Q";
            case Kind::PrimeField: return "F_" + prime_.str();
            case Kind::Localised: return "Z_(" + primes_.str() + ")";
        }
        return "?";
    }

private:
    explicit CoefficientSpec(Kind k) : kind_(k) {}

    Kind kind_;
    Integer prime_ = 0;
    PrimeSet primes_ = PrimeSet::empty();
};

}  // namespace confstab
