#include "realpt/int_matrix.hpp"

#include "realpt/errors.hpp"

#include <sstream>

namespace realpt {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
        if (row.size() != c_) throw ValidationError("ragged integer matrix");
        for (long x : row) a_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw ValidationError("ragged integer matrix");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) throw DomainError("integer matrix product: shape mismatch");
    IntMatrix r(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Integer& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DomainError("integer matrix sum: shape mismatch");
    IntMatrix r(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + (-o); }

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(*this);
    for (auto& x : r.a_) x = -x;
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
    std::vector<Integer> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
    return std::vector<Integer>(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_));
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
    if (v.size() != c_) throw DomainError("integer matrix apply: shape mismatch");
    std::vector<Integer> out(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::vector<Rational> IntMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != c_) throw DomainError("integer matrix apply: shape mismatch");
    std::vector<Rational> out(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != 0) out[i] += Rational((*this)(i, j)) * v[j];
    return out;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
    if (r_ != o.r_) throw DomainError("hcat: row mismatch");
    IntMatrix m(r_, c_ + o.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vcat(const IntMatrix& o) const {
    if (c_ != o.c_) throw DomainError("vcat: column mismatch");
    IntMatrix m(r_ + o.r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < o.r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(r_ + i, j) = o(i, j);
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const { return r_ == c_ && *this == identity(r_); }

Integer IntMatrix::determinant() const {
    if (r_ != c_) throw DomainError("determinant of a non-square matrix");
    std::size_t n = r_;
    if (n == 0) return 1;
    IntMatrix m(*this);
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace realpt
