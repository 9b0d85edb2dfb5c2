#pragma once

#include "realpt/cyclo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace realpt {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix transpose() const;
    std::vector<Integer> column(std::size_t j) const;
    std::vector<Integer> row(std::size_t i) const;
    std::vector<Integer> apply(const std::vector<Integer>& v) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    /// Horizontal concatenation [this | o].
    IntMatrix hcat(const IntMatrix& o) const;
    /// Vertical concatenation [this ; o].
    IntMatrix vcat(const IntMatrix& o) const;

    bool is_zero() const;
    bool is_identity() const;
    Integer determinant() const;
    /// Inverse of a unimodular matrix; throws DomainError otherwise.
    IntMatrix inverse_unimodular() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

    std::string to_string() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Integer> a_;
};

struct SmithForm {
    IntMatrix U, D, V;   ///< U * M * V = D
    std::size_t rank = 0;
    /// Diagonal of D, length min(rows, cols).
    std::vector<Integer> diagonal() const;
};

/// Smith normal form: U M V = D with U, V unimodular, D diagonal with
/// nonnegative entries d_1 | d_2 | ... .
SmithForm smith_normal_form(const IntMatrix& m);

/// Columns form a Z-basis of {x in Z^cols : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// An integer solution of A x = b, if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& b);

/// Solves A X = B column by column over Z.
std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b);

/// A rational vector phi with A phi - delta in Z^rows, if any exists.
/// Components of the returned solution are reduced into [0, 1).
std::optional<std::vector<Rational>> solve_mod_one(const IntMatrix& a, const std::vector<Rational>& delta);

/// A rational solution of A x = b, if one exists.
std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const std::vector<Rational>& b);

/// Reduce every component into [0, 1).
std::vector<Rational> reduce_mod_one(std::vector<Rational> v);
Rational reduce_mod_one(const Rational& q);
bool is_integral(const Rational& q);

}  // namespace realpt
