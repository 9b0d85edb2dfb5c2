#include "realpt/matrix.hpp"

#include "realpt/errors.hpp"

#include <sstream>

namespace realpt {

CMatrix::CMatrix(FieldPtr field, std::size_t n)
    : field_(std::move(field)), n_(n), a_(n * n, CycloNumber(field_)) {}

CMatrix CMatrix::identity(FieldPtr field, std::size_t n) {
    CMatrix m(std::move(field), n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloNumber(m.field_, Rational(1));
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<CycloNumber>& d) {
    if (d.empty()) throw ValidationError("empty diagonal");
    CMatrix m(d.front().field(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::from_rationals(FieldPtr field, const std::vector<std::vector<Rational>>& rows) {
    CMatrix m(field, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw ValidationError("matrix is not square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = CycloNumber(field, rows[i][j]);
    }
    return m;
}

CMatrix CMatrix::elementary(FieldPtr field, std::size_t n, std::size_t i, std::size_t j,
                            const CycloNumber& value) {
    CMatrix m = identity(std::move(field), n);
    m(i, j) += value;
    return m;
}

void CMatrix::check_compatible(const CMatrix& o) const {
    if (n_ != o.n_) throw DomainError("dimension mismatch " + std::to_string(n_) + " vs " + std::to_string(o.n_));
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    check_compatible(o);
    CMatrix r(field_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const CycloNumber& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!o(k, j).is_zero()) r(i, j) += x * o(k, j);
        }
    return r;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    check_compatible(o);
    CMatrix r(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    check_compatible(o);
    CMatrix r(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

CMatrix CMatrix::scaled(const CycloNumber& s) const {
    CMatrix r(*this);
    for (auto& x : r.a_) x *= s;
    return r;
}

CMatrix CMatrix::scaled(const Rational& s) const {
    CMatrix r(*this);
    for (auto& x : r.a_) x *= s;
    return r;
}

CMatrix CMatrix::conj() const {
    CMatrix r(*this);
    for (auto& x : r.a_) x = x.conj();
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(field_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::inverse() const {
    CMatrix a(*this);
    CMatrix inv = identity(field_, n_);
    for (std::size_t col = 0; col < n_; ++col) {
        std::size_t piv = col;
        while (piv < n_ && a(piv, col).is_zero()) ++piv;
        if (piv == n_) throw DomainError("singular matrix has no inverse");
        if (piv != col)
            for (std::size_t k = 0; k < n_; ++k) {
                std::swap(a(piv, k), a(col, k));
                std::swap(inv(piv, k), inv(col, k));
            }
        CycloNumber p = a(col, col).inverse();
        for (std::size_t k = 0; k < n_; ++k) {
            a(col, k) *= p;
            inv(col, k) *= p;
        }
        for (std::size_t r = 0; r < n_; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            CycloNumber f = a(r, col);
            for (std::size_t k = 0; k < n_; ++k) {
                if (!a(col, k).is_zero()) a(r, k) -= f * a(col, k);
                if (!inv(col, k).is_zero()) inv(r, k) -= f * inv(col, k);
            }
        }
    }
    return inv;
}

CycloNumber CMatrix::determinant() const {
    if (n_ == 0) return CycloNumber(field_, Rational(1));
    CMatrix a(*this);
    CycloNumber prev(field_, Rational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n_ && a(piv, k).is_zero()) ++piv;
            if (piv == n_) return CycloNumber(field_);
            for (std::size_t j = 0; j < n_; ++j) std::swap(a(piv, j), a(k, j));
            negate = !negate;
        }
        CycloNumber prev_inv = prev.inverse();
        for (std::size_t i = k + 1; i < n_; ++i)
            for (std::size_t j = k + 1; j < n_; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) * prev_inv;
        prev = a(k, k);
    }
    CycloNumber d = a(n_ - 1, n_ - 1);
    return negate ? -d : d;
}

CMatrix CMatrix::pow(std::int64_t e) const {
    CMatrix base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    CMatrix acc = identity(field_, n_);
    while (n) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return acc;
}

bool CMatrix::is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
}

bool CMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool CMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

bool CMatrix::is_upper_triangular() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!(*this)(i, j).is_zero()) return false;
    return true;
}

bool CMatrix::is_scalar() const {
    if (!is_diagonal()) return false;
    for (std::size_t i = 1; i < n_; ++i)
        if ((*this)(i, i) != (*this)(0, 0)) return false;
    return true;
}

bool CMatrix::is_nilpotent() const {
    // x^n = 0 for an n x n nilpotent matrix.
    return pow(static_cast<std::int64_t>(n_)).is_zero();
}

bool CMatrix::is_unipotent() const { return (*this - identity(field_, n_)).is_nilpotent(); }

bool operator==(const CMatrix& a, const CMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

std::string CMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
        os << "]";
    }
    os << "]";
    return os.str();
}

CMatrix exp_nilpotent(const CMatrix& x) {
    if (!x.is_nilpotent()) throw PreconditionError("exp_nilpotent: matrix is not nilpotent");
    const std::size_t n = x.dim();
    CMatrix term = CMatrix::identity(x.field(), n);
    CMatrix sum = term;
    for (std::size_t k = 1; k < n; ++k) {
        term = (term * x).scaled(frac(1, static_cast<long>(k)));
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum;
}

CMatrix log_unipotent(const CMatrix& u) {
    if (!u.is_unipotent()) throw PreconditionError("log_unipotent: matrix is not unipotent");
    const std::size_t n = u.dim();
    CMatrix y = u - CMatrix::identity(u.field(), n);
    CMatrix power = y;
    CMatrix sum(u.field(), n);
    for (std::size_t k = 1; k < n; ++k) {
        if (power.is_zero()) break;
        Rational c = frac(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
        sum = sum + power.scaled(c);
        power = power * y;
    }
    return sum;
}

}  // namespace realpt
