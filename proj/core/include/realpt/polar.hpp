#pragma once

#include "realpt/cyclo.hpp"

#include <map>
#include <string>

namespace realpt {

/// Prime factorization of a positive integer (trial division, then Pollard rho).
std::map<Integer, int> factor_integer(const Integer& n);

/// Positive real number of the form prod p^(e_p) with rational exponents.
/// Closed under products, inverses and rational powers, so square roots of
/// positive rationals stay exact.
class Modulus {
public:
    Modulus() = default;
    /// Throws DomainError unless q > 0.
    static Modulus from_rational(const Rational& q);

    const std::map<Integer, Rational>& exponents() const { return e_; }
    bool is_one() const { return e_.empty(); }
    /// True when every exponent is an integer.
    bool is_rational() const;
    /// Throws DomainError when !is_rational().
    Rational as_rational() const;

    Modulus operator*(const Modulus& o) const;
    Modulus inverse() const;
    Modulus pow(const Rational& e) const;
    Modulus sqrt() const { return pow(frac(1, 2)); }

    friend bool operator==(const Modulus& a, const Modulus& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Modulus& a, const Modulus& b) { return !(a == b); }
    std::string to_string() const;

private:
    std::map<Integer, Rational> e_;   // no zero exponents stored
};

/// Nonzero complex number modulus * exp(2 pi i angle), angle in [0, 1).
struct Polar {
    Modulus modulus;
    Rational angle;

    Polar() = default;
    Polar(Modulus m, const Rational& a);
    static Polar root_of_unity(const Rational& a) { return Polar(Modulus(), a); }
    static Polar from_rational(const Rational& q);
    /// Exact polar form of x; requires x or x^2 to be a root of unity times a
    /// positive rational, otherwise throws DomainError.
    static Polar from_cyclo(const CycloNumber& x);

    Polar operator*(const Polar& o) const;
    Polar inverse() const;
    Polar conj() const;
    Polar pow(const Integer& e) const;
    /// Principal square root: halves the modulus exponents and the angle.
    Polar sqrt() const;
    bool is_one() const { return modulus.is_one() && angle == 0; }

    /// Smallest even conductor m' divisible by m whose field contains this number.
    /// Throws DomainError when no cyclotomic field does.
    std::int64_t required_conductor(std::int64_t m) const;
    /// Throws ConductorError when the field is too small.
    CycloNumber realize(const FieldPtr& field) const;

    friend bool operator==(const Polar& a, const Polar& b) {
        return a.modulus == b.modulus && a.angle == b.angle;
    }
    friend bool operator!=(const Polar& a, const Polar& b) { return !(a == b); }
    std::string to_string() const;
};

/// Exact square root of a prime inside Q(zeta_m); throws ConductorError if absent.
CycloNumber sqrt_prime(const FieldPtr& field, const Integer& p);

}  // namespace realpt
