#include "realpt/polar.hpp"

#include "realpt/errors.hpp"
#include "realpt/int_matrix.hpp"

#include <numeric>
#include <sstream>

namespace realpt {

namespace {

Integer pollard_rho(const Integer& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        auto step = [&](const Integer& v) {
            Integer r = v * v + c;
            return Integer(r % n);
        };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = gcd(Integer(abs(x - y)), n);
        }
        if (d != n) return d;
    }
}

void factor_into(const Integer& n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
        ++out[n];
        return;
    }
    Integer d = pollard_rho(n);
    factor_into(d, out);
    factor_into(Integer(n / d), out);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace

std::map<Integer, int> factor_integer(const Integer& n) {
    if (n <= 0) throw DomainError("factor_integer: argument must be positive");
    std::map<Integer, int> out;
    Integer r = n;
    for (unsigned long p = 2; p < 1000 && r > 1; ++p)
        while (r % p == 0) {
            ++out[Integer(p)];
            r /= p;
        }
    factor_into(r, out);
    return out;
}

Modulus Modulus::from_rational(const Rational& q) {
    if (q <= 0) throw DomainError("modulus of a non-positive rational");
    Modulus m;
    for (const auto& [p, k] : factor_integer(q.get_num())) m.e_[p] += k;
    for (const auto& [p, k] : factor_integer(q.get_den())) m.e_[p] -= k;
    return m;
}

bool Modulus::is_rational() const {
    for (const auto& [p, e] : e_)
        if (!is_integral(e)) return false;
    return true;
}

Rational Modulus::as_rational() const {
    if (!is_rational()) throw DomainError("modulus " + to_string() + " is irrational");
    Integer num = 1, den = 1;
    for (const auto& [p, e] : e_) {
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), Integer(abs(e.get_num())).get_ui());
        (e > 0 ? num : den) *= pw;
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Modulus Modulus::operator*(const Modulus& o) const {
    Modulus r(*this);
    for (const auto& [p, e] : o.e_) {
        Rational s = r.e_[p] + e;
        if (s == 0)
            r.e_.erase(p);
        else
            r.e_[p] = s;
    }
    return r;
}

Modulus Modulus::inverse() const { return pow(Rational(-1)); }

Modulus Modulus::pow(const Rational& k) const {
    Modulus r;
    if (k == 0) return r;
    for (const auto& [p, e] : e_) {
        Rational s = e * k;
        s.canonicalize();
        r.e_[p] = s;
    }
    return r;
}

std::string Modulus::to_string() const {
    if (e_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, e] : e_) {
        os << (first ? "" : "*") << p.get_str();
        if (e != 1) os << "^(" << e.get_str() << ")";
        first = false;
    }
    return os.str();
}

Polar::Polar(Modulus m, const Rational& a) : modulus(std::move(m)), angle(reduce_mod_one(a)) {}

Polar Polar::from_rational(const Rational& q) {
    if (q == 0) throw DomainError("zero has no polar form");
    return Polar(Modulus::from_rational(abs(q)), q < 0 ? frac(1, 2) : Rational(0));
}

Polar Polar::from_cyclo(const CycloNumber& x) {
    if (x.is_zero()) throw DomainError("zero has no polar form");
    const auto& F = x.field();
    const std::int64_t m = F->conductor();
    for (std::int64_t k = 0; k < m; ++k) {
        auto r = (x * CycloNumber::zeta(F, m - k)).as_rational();
        if (r && *r > 0) return Polar(Modulus::from_rational(*r), frac(k, m));
    }
    CycloNumber x2 = x * x;
    for (std::int64_t k = 0; k < m; ++k) {
        auto r = (x2 * CycloNumber::zeta(F, m - k)).as_rational();
        if (!r || *r <= 0) continue;
        // x = +-sqrt(r) zeta_(2m)^k; pick the sign by realizing both candidates.
        Polar cand(Modulus::from_rational(*r).sqrt(), frac(k, 2 * m));
        for (int flip = 0; flip < 2; ++flip) {
            Polar c = flip ? Polar(cand.modulus, cand.angle + frac(1, 2)) : cand;
            if (c.required_conductor(m) == m && c.realize(F) == x) return c;
        }
        throw DomainError("polar form of " + x.to_string() + " needs conductor " +
                          std::to_string(cand.required_conductor(m)));
    }
    throw DomainError(x.to_string() + " is not a root of unity times a real algebraic square root");
}

Polar Polar::operator*(const Polar& o) const { return Polar(modulus * o.modulus, angle + o.angle); }
Polar Polar::inverse() const { return Polar(modulus.inverse(), -angle); }
Polar Polar::conj() const { return Polar(modulus, -angle); }
Polar Polar::pow(const Integer& e) const { return Polar(modulus.pow(Rational(e)), angle * Rational(e)); }
Polar Polar::sqrt() const { return Polar(modulus.sqrt(), angle / 2); }

std::int64_t Polar::required_conductor(std::int64_t m) const {
    std::int64_t r = m;
    const Integer& den = angle.get_den();
    if (!den.fits_slong_p()) throw DomainError("angle denominator too large");
    r = lcm64(r, den.get_si());
    for (const auto& [p, e] : modulus.exponents()) {
        if (is_integral(e)) continue;
        if (!is_integral(e * 2)) throw DomainError("modulus " + modulus.to_string() + " is not in any cyclotomic field");
        if (!p.fits_slong_p()) throw DomainError("prime too large for a cyclotomic square root");
        long pl = p.get_si();
        if (pl == 2)
            r = lcm64(r, 8);
        else
            r = lcm64(r, pl % 4 == 3 ? 4 * pl : pl);
    }
    if (r % 2) r *= 2;
    return r;
}

CycloNumber sqrt_prime(const FieldPtr& field, const Integer& p) {
    const std::int64_t m = field->conductor();
    if (!p.fits_slong_p()) throw DomainError("prime too large for a cyclotomic square root");
    const long pl = p.get_si();
    if (pl == 2) {
        if (m % 8) throw ConductorError("sqrt(2) needs zeta_8", lcm64(m, 8));
        return CycloNumber::zeta(field, m / 8) + CycloNumber::zeta(field, 7 * m / 8);
    }
    const std::int64_t need = pl % 4 == 3 ? 4 * pl : pl;
    if (m % need) throw ConductorError("sqrt(" + p.get_str() + ") needs zeta_" + std::to_string(need), lcm64(m, need));
    // Quadratic Gauss sum: g^2 = p* = (-1)^((p-1)/2) p, and g = i sqrt(p) when p = 3 mod 4.
    CycloNumber g(field);
    const std::int64_t step = m / pl;
    for (long a = 1; a < pl; ++a) {
        Integer aa(a);
        int leg = mpz_legendre(aa.get_mpz_t(), p.get_mpz_t());
        CycloNumber z = CycloNumber::zeta(field, step * a);
        g = leg > 0 ? g + z : g - z;
    }
    if (pl % 4 == 3) g = -(g * CycloNumber::zeta(field, m / 4));
    return g;
}

CycloNumber Polar::realize(const FieldPtr& field) const {
    const std::int64_t m = field->conductor();
    const std::int64_t need = required_conductor(m);
    if (need != m) throw ConductorError("cannot realize " + to_string() + " in Q(zeta_" + std::to_string(m) + ")", need);
    Rational angle_steps = angle * Rational(m);
    CycloNumber out = CycloNumber::zeta(field, angle_steps.get_num().get_si());
    for (const auto& [p, e] : modulus.exponents()) {
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
        if (e != Rational(fl)) out = out * sqrt_prime(field, p);
        if (fl != 0) {
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), Integer(abs(fl)).get_ui());
            Rational f = fl > 0 ? Rational(pw) : Rational(Integer(1), pw);
            f.canonicalize();
            out = out * f;
        }
    }
    return out;
}

std::string Polar::to_string() const {
    std::ostringstream os;
    if (!modulus.is_one()) os << modulus.to_string() << "*";
    os << "e(" << angle.get_str() << ")";
    return os.str();
}

}  // namespace realpt
