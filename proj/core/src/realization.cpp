#include "realpt/realization.hpp"

#include "realpt/errors.hpp"

#include <set>

namespace realpt {

namespace {

// Exponent e with x = 2^e, for a positive rational x; nullopt otherwise.
std::optional<Integer> log2_exact(const CycloNumber& x) {
    auto r = x.as_rational();
    if (!r || *r <= 0) return std::nullopt;
    Modulus m = Modulus::from_rational(*r);
    if (m.is_one()) return Integer(0);
    if (m.exponents().size() != 1 || m.exponents().begin()->first != 2) return std::nullopt;
    const Rational& e = m.exponents().begin()->second;
    if (!is_integral(e)) return std::nullopt;
    return e.get_num();
}

// diag(2^(e_1), ..., 2^(e_n)) for an integer exponent row.
CMatrix power_of_two_diagonal(const FieldPtr& field, const IntMatrix& e, std::size_t row) {
    std::vector<CycloNumber> d;
    for (std::size_t i = 0; i < e.cols(); ++i) d.push_back(CycloNumber(field, Rational(2)).pow(e(row, i).get_si()));
    return CMatrix::diagonal(d);
}

// Exponent vector of a diagonal matrix of powers of two.
std::optional<IntVector> diagonal_log2(const CMatrix& y) {
    if (!y.is_diagonal()) return std::nullopt;
    IntVector e;
    for (std::size_t i = 0; i < y.dim(); ++i) {
        auto k = log2_exact(y(i, i));
        if (!k) return std::nullopt;
        e.push_back(*k);
    }
    return e;
}

// c with y = c x, c nonzero.
std::optional<CycloNumber> proportionality(const CMatrix& y, const CMatrix& x) {
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j) {
            if (x(i, j).is_zero()) continue;
            CycloNumber c = y(i, j) / x(i, j);
            if (c.is_zero() || y != x.scaled(c)) return std::nullopt;
            return c;
        }
    return std::nullopt;
}

CycloNumber evaluate_polar(const Polar& p, const FieldPtr& field) { return p.realize(field); }

constexpr std::size_t kTorsionSampleLimit = 64;

}  // namespace

std::vector<CMatrix> torus_generators(const DiagonalQuasiTorus& t, const FieldPtr& field) {
    std::vector<CMatrix> out;
    const std::size_t a = t.rank();
    IntMatrix free = integer_kernel(t.relations().transpose());
    for (std::size_t c = 0; c < free.cols(); ++c) {
        QuasiTorusPoint p;
        for (std::size_t i = 0; i < a; ++i)
            p.coords.push_back(Polar::from_rational(Rational(2)).pow(free(i, c)));
        out.push_back(t.realize(p, field));
    }
    GammaModule torsion(t.relations(), IntMatrix::identity(a));
    const long e = torsion.torsion_exponent().get_si();
    if (e == 1) return out;
    std::vector<long> k(a, 0);
    std::size_t taken = 0;
    for (;;) {
        std::size_t i = k.size();
        while (i > 0 && ++k[i - 1] == e) k[--i] = 0;
        if (i == 0 || taken == kTorsionSampleLimit) break;
        std::vector<Rational> angles;
        for (long x : k) angles.push_back(frac(x, e));
        auto p = QuasiTorusPoint::from_angles(angles);
        if (!is_valid_point(torsion, p)) continue;
        try {
            out.push_back(t.realize(p, field));
            ++taken;
        } catch (const ConductorError&) {
        }
    }
    return out;
}

DiagonalQuasiTorus::DiagonalQuasiTorus(IntMatrix exponents, IntMatrix relations)
    : e_(std::move(exponents)), b_(std::move(relations)) {
    if (b_.rows() != e_.rows()) {
        if (b_.rows() == 0 && b_.cols() == 0)
            b_ = IntMatrix(e_.rows(), 0);
        else
            throw ValidationError("torus relations must have one row per generator");
    }
    IntMatrix full = integer_kernel(e_.hcat(-b_));
    annihilator_ = IntMatrix(e_.cols(), full.cols());
    for (std::size_t i = 0; i < e_.cols(); ++i)
        for (std::size_t j = 0; j < full.cols(); ++j) annihilator_(i, j) = full(i, j);
    // Injectivity: every generator of M restricts from a character of the diagonal torus.
    IntMatrix eb = e_.hcat(b_);
    if (!solve_integer(eb, IntMatrix::identity(e_.rows())))
        throw ValidationError("torus embedding is not injective: characters do not generate the module");
}

CMatrix DiagonalQuasiTorus::realize(const QuasiTorusPoint& p, const FieldPtr& field) const {
    QuasiTorusPoint d = push_point(e_.transpose(), p);
    std::vector<CycloNumber> diag;
    for (const auto& c : d.coords) diag.push_back(evaluate_polar(c, field));
    return CMatrix::diagonal(diag);
}

std::optional<QuasiTorusPoint> DiagonalQuasiTorus::coordinates(const CMatrix& d) const {
    if (!d.is_diagonal() || d.dim() != dim()) return std::nullopt;
    std::vector<Polar> polar;
    for (std::size_t i = 0; i < d.dim(); ++i) {
        if (d(i, i).is_zero()) return std::nullopt;
        polar.push_back(Polar::from_cyclo(d(i, i)));
    }
    IntMatrix system = e_.transpose().vcat(b_.transpose());
    std::vector<Rational> angles(system.rows());
    for (std::size_t i = 0; i < polar.size(); ++i) angles[i] = polar[i].angle;
    auto theta = solve_mod_one(system, angles);
    if (!theta) return std::nullopt;
    std::set<Integer> primes;
    for (const auto& p : polar)
        for (const auto& [q, e] : p.modulus.exponents()) primes.insert(q);
    std::vector<Modulus> moduli(rank());
    for (const auto& q : primes) {
        std::vector<Rational> rhs(system.rows());
        for (std::size_t i = 0; i < polar.size(); ++i) {
            auto it = polar[i].modulus.exponents().find(q);
            if (it != polar[i].modulus.exponents().end()) rhs[i] = it->second;
        }
        auto sol = solve_rational(system, rhs);
        if (!sol) return std::nullopt;
        for (std::size_t k = 0; k < rank(); ++k)
            if ((*sol)[k] != 0) moduli[k] = moduli[k] * Modulus::from_rational(Rational(q)).pow((*sol)[k]);
    }
    QuasiTorusPoint p;
    for (std::size_t k = 0; k < rank(); ++k) p.coords.emplace_back(moduli[k], (*theta)[k]);
    if (push_point(e_.transpose(), p).coords != polar) throw Error("internal: torus coordinates do not reproduce the diagonal");
    return p;
}

bool DiagonalQuasiTorus::contains(const CMatrix& d) const {
    if (!d.is_diagonal() || d.dim() != dim()) return false;
    for (std::size_t i = 0; i < d.dim(); ++i)
        if (d(i, i).is_zero()) return false;
    for (std::size_t j = 0; j < annihilator_.cols(); ++j) {
        CycloNumber v(d.field(), Rational(1));
        for (std::size_t i = 0; i < d.dim(); ++i)
            if (annihilator_(i, j) != 0) v = v * d(i, i).pow(annihilator_(i, j).get_si());
        if (!v.is_one()) return false;
    }
    return true;
}

std::optional<GammaModule> DiagonalQuasiTorus::module_for(const AntiRegularMap& f) const {
    auto s = diagonal_cocharacter_action(f, dim());
    if (!s) return std::nullopt;
    IntMatrix sigma_n = s->transpose();
    // f must preserve the subgroup: its annihilator is sigma-stable.
    if (annihilator_.cols() && !solve_integer(annihilator_, sigma_n * annihilator_)) return std::nullopt;
    auto w = solve_integer(e_.hcat(b_), IntMatrix::identity(rank()));
    if (!w) throw Error("internal: torus embedding lost injectivity");
    IntMatrix pre(dim(), rank());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t k = 0; k < rank(); ++k) pre(i, k) = (*w)(i, k);
    return GammaModule(b_, e_ * sigma_n * pre);
}

std::optional<IntMatrix> diagonal_cocharacter_action(const AntiRegularMap& f, std::size_t n) {
    IntMatrix s(n, n);
    IntMatrix id = IntMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto e = diagonal_log2(f(power_of_two_diagonal(f.twist().field(), id, k)));
        if (!e) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) s(i, k) = (*e)[i];
    }
    return s;
}

PinnedRealization PinnedRealization::standard_sl(const FieldPtr& field, std::size_t n) {
    if (n < 2) throw ValidationError("SL_n pinning needs n >= 2");
    PinnedRealization r;
    r.n = n;
    r.torus_map = IntMatrix(n - 1, n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        r.torus_map(k, k) = 1;
        r.torus_map(k, k + 1) = -1;
        r.root_vectors.push_back(CMatrix::elementary(field, n, k, k + 1, CycloNumber(field, 1)) -
                                 CMatrix::identity(field, n));
    }
    return r;
}

PinnedRealization PinnedRealization::standard_gl(const FieldPtr& field, std::size_t n) {
    PinnedRealization r = diagonal(field, n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        r.root_vectors.push_back(CMatrix::elementary(field, n, k, k + 1, CycloNumber(field, 1)) -
                                 CMatrix::identity(field, n));
    return r;
}

PinnedRealization PinnedRealization::diagonal(const FieldPtr&, std::size_t n) {
    PinnedRealization r;
    r.n = n;
    r.torus_map = IntMatrix::identity(n);
    return r;
}

BasedRootDatum standard_sl_datum(std::size_t n) {
    if (n < 2) throw ValidationError("SL_n needs n >= 2");
    return BasedRootDatum::simply_connected(cartan_matrix("A" + std::to_string(n - 1)));
}

BasedRootDatum standard_gl_datum(std::size_t n) {
    IntMatrix a(n, n ? n - 1 : 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        a(k, k) = 1;
        a(k + 1, k) = -1;
    }
    return BasedRootDatum(a, a);
}

CMatrix realize_torus_point(const QuasiTorusPoint& p, const PinnedRealization& r, const FieldPtr& field) {
    return r.torus().realize(p, field);
}

PinningCheck verify_pinning(const PinnedRealization& r, const BasedRootDatum& datum, const FieldPtr& field) {
    PinningCheck c;
    const std::size_t rank = r.torus_map.rows();
    if (rank != datum.rank() || r.torus_map.cols() != r.n) {
        c.ok = false;
        c.failure = "torus map does not match the datum rank";
        return c;
    }
    if (r.root_vectors.size() != datum.semisimple_rank()) {
        c.ok = false;
        c.failure = "one root vector per simple root is required";
        return c;
    }
    const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::vector<std::vector<Rational>> samples(3, std::vector<Rational>(rank));
    for (std::size_t k = 0; k < rank; ++k) {
        samples[0][k] = Rational(primes[k % 12]);
        samples[1][k] = frac(1, primes[(k + 1) % 12]);
        samples[2][k] = k == 0 ? Rational(2) : Rational(1);
    }
    for (std::size_t a = 0; a < r.root_vectors.size(); ++a) {
        const CMatrix& x = r.root_vectors[a];
        if (x.dim() != r.n || x.is_zero() || !x.is_nilpotent() || !x.is_upper_triangular()) {
            c.ok = false;
            c.failure = "root vector " + std::to_string(a) + " is not a nonzero upper-triangular nilpotent";
            return c;
        }
        for (const auto& u : samples) {
            QuasiTorusPoint p;
            for (const auto& v : u) p.coords.push_back(Polar::from_rational(v));
            CMatrix t = realize_torus_point(p, r, field);
            CycloNumber alpha(field, Rational(1));
            for (std::size_t k = 0; k < rank; ++k) alpha = alpha * CycloNumber(field, u[k]).pow(datum.simple_roots()(k, a).get_si());
            if (t * x * t.inverse() != x.scaled(alpha)) {
                c.ok = false;
                c.failure = "torus does not scale root vector " + std::to_string(a) + " by its root";
                return c;
            }
        }
    }
    return c;
}

std::optional<IntMatrix> cocharacter_action(const AntiRegularMap& f, const PinnedRealization& r) {
    const std::size_t rank = r.torus_map.rows();
    IntMatrix s(rank, rank);
    IntMatrix et = r.torus_map.transpose();
    for (std::size_t k = 0; k < rank; ++k) {
        auto e = diagonal_log2(f(power_of_two_diagonal(f.twist().field(), r.torus_map, k)));
        if (!e) return std::nullopt;
        auto x = solve_integer(et, *e);
        if (!x) return std::nullopt;
        for (std::size_t i = 0; i < rank; ++i) s(i, k) = (*x)[i];
    }
    return s;
}

CMatrix differential(const AntiRegularMap& f, const CMatrix& x) { return log_unipotent(f(exp_nilpotent(x))); }

std::optional<PinningAction> pinning_action(const AntiRegularMap& f, const PinnedRealization& r) {
    if (!cocharacter_action(f, r)) return std::nullopt;
    PinningAction act;
    std::vector<bool> hit(r.root_vectors.size(), false);
    for (const auto& x : r.root_vectors) {
        CMatrix y = differential(f, x);
        bool matched = false;
        for (std::size_t b = 0; b < r.root_vectors.size() && !matched; ++b) {
            auto c = proportionality(y, r.root_vectors[b]);
            if (!c || hit[b]) continue;
            act.nu.push_back(b);
            act.scale.push_back(*c);
            hit[b] = matched = true;
        }
        if (!matched) return std::nullopt;
    }
    return act;
}

}  // namespace realpt
