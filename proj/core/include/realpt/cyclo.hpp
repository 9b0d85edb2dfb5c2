#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace realpt {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical rational a/b.
inline Rational frac(long a, long b) {
    Rational q{Integer(a), Integer(b)};
    q.canonicalize();
    return q;
}

/// The cyclotomic field Q(zeta_m) for an even conductor m.
///
/// Elements are stored as coefficient vectors in the power basis
/// 1, zeta, ..., zeta^(d-1) with d = phi(m); products are reduced modulo the
/// m-th cyclotomic polynomial. Fields are shared by pointer and compared by
/// conductor.
class CycloField {
public:
    static std::shared_ptr<const CycloField> make(std::int64_t conductor);

    std::int64_t conductor() const { return m_; }
    std::size_t degree() const { return phi_.size() - 1; }
    /// Coefficients of Phi_m, lowest degree first, monic.
    const std::vector<Integer>& cyclotomic_polynomial() const { return phi_; }
    /// Reduced residues of zeta^k for k in [0, m).
    const std::vector<Rational>& zeta_power(std::int64_t k) const;

private:
    explicit CycloField(std::int64_t m);

    std::int64_t m_;
    std::vector<Integer> phi_;
    std::vector<std::vector<Rational>> powers_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(std::int64_t n);

class CycloNumber {
public:
    CycloNumber() = default;
    explicit CycloNumber(FieldPtr field);
    CycloNumber(FieldPtr field, const Rational& value);
    /// Reduces an arbitrary-length polynomial in zeta modulo Phi_m.
    static CycloNumber reduce(FieldPtr field, std::vector<Rational> raw);
    static CycloNumber zeta(FieldPtr field, std::int64_t k);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    /// The rational value when the number lies in Q.
    std::optional<Rational> as_rational() const;

    CycloNumber conj() const;
    CycloNumber inverse() const;
    CycloNumber pow(std::int64_t e) const;

    CycloNumber& operator+=(const CycloNumber& o);
    CycloNumber& operator-=(const CycloNumber& o);
    CycloNumber& operator*=(const CycloNumber& o);
    CycloNumber& operator*=(const Rational& r);

    friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
    friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
    friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
    friend CycloNumber operator*(CycloNumber a, const Rational& r) { return a *= r; }
    friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }
    CycloNumber operator-() const;

    friend bool operator==(const CycloNumber& a, const CycloNumber& b);
    friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

    /// Human-readable form, e.g. "1/2 - 3*z^2" with z = zeta_m.
    std::string to_string() const;

private:
    void check_same_field(const CycloNumber& o) const;

    FieldPtr field_;
    std::vector<Rational> c_;
};

}  // namespace realpt
