#include "realpt/errors.hpp"
#include "realpt/int_matrix.hpp"

namespace realpt {

namespace {

struct Work {
    IntMatrix a, u, v;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < u.cols(); ++k) std::swap(u(i, k), u(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
        for (std::size_t k = 0; k < v.rows(); ++k) std::swap(v(k, i), v(k, j));
    }
    // row_i += q * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) += q * a(j, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u(i, k) += q * u(j, k);
    }
    // col_i += q * col_j
    void add_col(std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t k = 0; k < a.rows(); ++k) a(k, i) += q * a(k, j);
        for (std::size_t k = 0; k < v.rows(); ++k) v(k, i) += q * v(k, j);
    }
    // (row_i, row_j) <- (x row_i + y row_j, z row_i + w row_j), a unimodular 2x2 step
    void mix_rows(std::size_t i, std::size_t j, const Integer& x, const Integer& y, const Integer& z, const Integer& w) {
        auto mix = [&](IntMatrix& m) {
            for (std::size_t k = 0; k < m.cols(); ++k) {
                Integer p = x * m(i, k) + y * m(j, k);
                m(j, k) = z * m(i, k) + w * m(j, k);
                m(i, k) = std::move(p);
            }
        };
        mix(a);
        mix(u);
    }
    void mix_cols(std::size_t i, std::size_t j, const Integer& x, const Integer& y, const Integer& z, const Integer& w) {
        auto mix = [&](IntMatrix& m) {
            for (std::size_t k = 0; k < m.rows(); ++k) {
                Integer p = x * m(k, i) + y * m(k, j);
                m(k, j) = z * m(k, i) + w * m(k, j);
                m(k, i) = std::move(p);
            }
        };
        mix(a);
        mix(v);
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = -a(i, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
    }
};

// g = gcd(a, b) = x a + y b
void bezout(const Integer& a, const Integer& b, Integer& g, Integer& x, Integer& y) {
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
    std::size_t n = std::min(D.rows(), D.cols());
    std::vector<Integer> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
    return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
    Work w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (w.a(i, j) != 0 && (!found || abs(w.a(i, j)) < abs(w.a(pi, pj)))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        // Extended-gcd steps clear the pivot row and column; the pivot only shrinks to a gcd.
        Integer g, x, y;
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (w.a(i, t) == 0) continue;
                if (w.a(i, t) % w.a(t, t) == 0) {
                    w.add_row(i, t, -(w.a(i, t) / w.a(t, t)));
                    continue;
                }
                const Integer p = w.a(t, t), q = w.a(i, t);
                bezout(p, q, g, x, y);
                w.mix_rows(t, i, x, y, -q / g, p / g);
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (w.a(t, j) == 0) continue;
                if (w.a(t, j) % w.a(t, t) == 0) {
                    w.add_col(j, t, -(w.a(t, j) / w.a(t, t)));
                    continue;
                }
                const Integer p = w.a(t, t), q = w.a(t, j);
                bezout(p, q, g, x, y);
                w.mix_cols(t, j, x, y, -q / g, p / g);
                dirty = true;  // the column step may refill the pivot column
            }
            if (dirty) continue;
            // Enforce divisibility of the remaining block by the pivot.
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (w.a(i, j) % w.a(t, t) != 0) {
                        w.add_row(t, i, 1);
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (w.a(t, t) < 0) w.negate_row(t);
    }
    SmithForm s{w.u, w.a, w.v, t};
    return s;
}

IntMatrix IntMatrix::inverse_unimodular() const {
    if (r_ != c_) throw DomainError("inverse of a non-square integer matrix");
    SmithForm s = smith_normal_form(*this);
    if (!s.D.is_identity()) throw DomainError("integer matrix is not unimodular");
    return s.V * s.U;
}

IntMatrix integer_kernel(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    IntMatrix k(a.cols(), a.cols() - s.rank);
    for (std::size_t j = s.rank; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - s.rank) = s.V(i, j);
    return k;
}

namespace {

std::optional<std::vector<Integer>> solve_with(const SmithForm& s, const std::vector<Integer>& b) {
    std::vector<Integer> c = s.U.apply(b);
    std::vector<Integer> y(s.V.rows());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.D(i, i) != 0) return std::nullopt;
            y[i] = c[i] / s.D(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

}  // namespace

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& b) {
    if (b.size() != a.rows()) throw DomainError("solve_integer: shape mismatch");
    return solve_with(smith_normal_form(a), b);
}

std::optional<IntMatrix> solve_integer(const IntMatrix& a, const IntMatrix& b) {
    if (b.rows() != a.rows()) throw DomainError("solve_integer: shape mismatch");
    SmithForm s = smith_normal_form(a);
    IntMatrix x(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto col = solve_with(s, b.column(j));
        if (!col) return std::nullopt;
        for (std::size_t i = 0; i < a.cols(); ++i) x(i, j) = (*col)[i];
    }
    return x;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Rational reduce_mod_one(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(f);
    r.canonicalize();
    return r;
}

std::vector<Rational> reduce_mod_one(std::vector<Rational> v) {
    for (auto& x : v) x = reduce_mod_one(x);
    return v;
}

std::optional<std::vector<Rational>> solve_mod_one(const IntMatrix& a, const std::vector<Rational>& delta) {
    if (delta.size() != a.rows()) throw DomainError("solve_mod_one: shape mismatch");
    SmithForm s = smith_normal_form(a);
    std::vector<Rational> c = s.U.apply(delta);
    std::vector<Rational> psi(a.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            psi[i] = c[i] / Rational(s.D(i, i));
            psi[i].canonicalize();
        } else if (!is_integral(c[i])) {
            return std::nullopt;
        }
    }
    return reduce_mod_one(s.V.apply(psi));
}

std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw DomainError("solve_rational: shape mismatch");
    SmithForm s = smith_normal_form(a);
    std::vector<Rational> c = s.U.apply(b);
    std::vector<Rational> psi(a.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            psi[i] = c[i] / Rational(s.D(i, i));
            psi[i].canonicalize();
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(psi);
}

}  // namespace realpt
