#include "realpt/cyclo.hpp"

#include "realpt/errors.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace realpt {

namespace {

// Exact division of integer polynomials, divisor monic.
std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {Integer(1)};
    std::vector<Integer> quot(num.size() - dn);
    for (std::size_t i = num.size(); i-- > dn;) {
        Integer c = num[i];
        quot[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return quot;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(std::int64_t n) {
    if (n < 1) throw ValidationError("cyclotomic polynomial needs n >= 1");
    static std::mutex mu;
    static std::map<std::int64_t, std::vector<Integer>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    std::vector<Integer> p(static_cast<std::size_t>(n) + 1);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(std::move(p), cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, p);
    return p;
}

CycloField::CycloField(std::int64_t m) : m_(m), phi_(realpt::cyclotomic_polynomial(m)) {
    const std::size_t d = degree();
    powers_.reserve(static_cast<std::size_t>(m));
    std::vector<Rational> cur(d);
    cur[0] = 1;
    for (std::int64_t k = 0; k < m; ++k) {
        powers_.push_back(cur);
        // multiply by zeta: shift up, then fold the top coefficient through Phi_m.
        Rational top = cur[d - 1];
        for (std::size_t j = d - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::size_t j = 0; j < d; ++j) cur[j] -= top * Rational(phi_[j]);
    }
}

std::shared_ptr<const CycloField> CycloField::make(std::int64_t conductor) {
    if (conductor < 2 || conductor % 2 != 0)
        throw ValidationError("conductor must be an even integer >= 2, got " + std::to_string(conductor));
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const CycloField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[conductor];
    if (!slot) slot = std::shared_ptr<const CycloField>(new CycloField(conductor));
    return slot;
}

const std::vector<Rational>& CycloField::zeta_power(std::int64_t k) const {
    k %= m_;
    if (k < 0) k += m_;
    return powers_[static_cast<std::size_t>(k)];
}

CycloNumber::CycloNumber(FieldPtr field) : field_(std::move(field)), c_(field_->degree()) {}

CycloNumber::CycloNumber(FieldPtr field, const Rational& value) : CycloNumber(std::move(field)) {
    c_[0] = value;
}

CycloNumber CycloNumber::reduce(FieldPtr field, std::vector<Rational> raw) {
    const auto& phi = field->cyclotomic_polynomial();
    const std::size_t d = field->degree();
    for (std::size_t i = raw.size(); i-- > d;) {
        Rational c = raw[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) raw[i - d + j] -= c * Rational(phi[j]);
    }
    raw.resize(d);
    CycloNumber out(std::move(field));
    out.c_ = std::move(raw);
    return out;
}

CycloNumber CycloNumber::zeta(FieldPtr field, std::int64_t k) {
    CycloNumber out(field);
    out.c_ = field->zeta_power(k);
    return out;
}

bool CycloNumber::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycloNumber::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::optional<Rational> CycloNumber::as_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return std::nullopt;
    return c_.empty() ? Rational(0) : c_[0];
}

void CycloNumber::check_same_field(const CycloNumber& o) const {
    if (!field_ || !o.field_) throw DomainError("arithmetic on an unbound cyclotomic number");
    if (field_->conductor() != o.field_->conductor())
        throw DomainError("mixed conductors " + std::to_string(field_->conductor()) + " and " +
                          std::to_string(o.field_->conductor()));
}

CycloNumber CycloNumber::conj() const {
    CycloNumber out(field_);
    const std::int64_t m = field_->conductor();
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        const auto& zp = field_->zeta_power(m - static_cast<std::int64_t>(j));
        for (std::size_t k = 0; k < zp.size(); ++k) out.c_[k] += c_[j] * zp[k];
    }
    return out;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
    check_same_field(o);
    const std::size_t d = c_.size();
    std::vector<Rational> raw(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (o.c_[j] != 0) raw[i + j] += c_[i] * o.c_[j];
    }
    *this = reduce(field_, std::move(raw));
    return *this;
}

CycloNumber& CycloNumber::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber out(*this);
    for (auto& x : out.c_) x = -x;
    return out;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
    if (!a.field_ || !b.field_) return !a.field_ && !b.field_;
    return a.field_->conductor() == b.field_->conductor() && a.c_ == b.c_;
}

CycloNumber CycloNumber::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (auto r = as_rational()) return CycloNumber(field_, 1 / *r);
    // Solve (multiplication by this) * x = 1 over Q.
    const std::size_t d = c_.size();
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1));
    for (std::size_t j = 0; j < d; ++j) {
        CycloNumber col = *this * zeta(field_, static_cast<std::int64_t>(j));
        for (std::size_t i = 0; i < d; ++i) a[i][j] = col.c_[i];
    }
    a[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && a[piv][col] == 0) ++piv;
        if (piv == d) throw DomainError("inverse of zero");
        std::swap(a[piv], a[col]);
        Rational inv = 1 / a[col][col];
        for (std::size_t k = col; k <= d; ++k) a[col][k] *= inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t k = col; k <= d; ++k) a[r][k] -= f * a[col][k];
        }
    }
    CycloNumber out(field_);
    for (std::size_t i = 0; i < d; ++i) out.c_[i] = a[i][d];
    return out;
}

CycloNumber CycloNumber::pow(std::int64_t e) const {
    CycloNumber base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    CycloNumber acc(field_, Rational(1));
    while (n) {
        if (n & 1) acc *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return acc;
}

std::string CycloNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        Rational v = c_[j];
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        Rational a = abs(v);
        if (j == 0) os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << "z";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace realpt
