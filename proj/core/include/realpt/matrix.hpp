#pragma once

#include "realpt/cyclo.hpp"

#include <string>
#include <vector>

namespace realpt {

/// Square matrix over a cyclotomic field, row-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(FieldPtr field, std::size_t n);
    static CMatrix identity(FieldPtr field, std::size_t n);
    static CMatrix diagonal(const std::vector<CycloNumber>& d);
    /// Rows of rationals; convenient for tests and literal data.
    static CMatrix from_rationals(FieldPtr field, const std::vector<std::vector<Rational>>& rows);
    static CMatrix elementary(FieldPtr field, std::size_t n, std::size_t i, std::size_t j,
                              const CycloNumber& value);

    std::size_t dim() const { return n_; }
    const FieldPtr& field() const { return field_; }

    CycloNumber& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const CycloNumber& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix scaled(const CycloNumber& s) const;
    CMatrix scaled(const Rational& s) const;

    CMatrix conj() const;
    CMatrix transpose() const;
    /// Gauss-Jordan over the field; throws DomainError when singular.
    CMatrix inverse() const;
    /// Fraction-free (Bareiss) elimination.
    CycloNumber determinant() const;
    CMatrix pow(std::int64_t e) const;

    bool is_identity() const;
    bool is_zero() const;
    bool is_diagonal() const;
    bool is_upper_triangular() const;
    bool is_nilpotent() const;
    bool is_unipotent() const;
    bool is_scalar() const;

    friend bool operator==(const CMatrix& a, const CMatrix& b);
    friend bool operator!=(const CMatrix& a, const CMatrix& b) { return !(a == b); }

    std::string to_string() const;

private:
    void check_compatible(const CMatrix& o) const;

    FieldPtr field_;
    std::size_t n_ = 0;
    std::vector<CycloNumber> a_;
};

/// Finite exponential of a nilpotent matrix; throws PreconditionError otherwise.
CMatrix exp_nilpotent(const CMatrix& x);
/// Finite logarithm of a unipotent matrix; throws PreconditionError otherwise.
CMatrix log_unipotent(const CMatrix& u);

}  // namespace realpt
