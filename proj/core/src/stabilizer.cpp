#include "realpt/stabilizer.hpp"

#include "realpt/errors.hpp"

#include <algorithm>

namespace realpt {

namespace {

bool contains_matrix(const std::vector<CMatrix>& xs, const CMatrix& x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

// H^1 of a finite group under phi by brute force; identity first when it is listed first.
std::vector<CMatrix> finite_h1(const std::vector<CMatrix>& group, const std::function<CMatrix(const CMatrix&)>& phi) {
    std::vector<CMatrix> cocycles;
    for (const auto& h : group)
        if ((h * phi(h)).is_identity()) cocycles.push_back(h);
    std::vector<CMatrix> reps;
    std::vector<bool> seen(cocycles.size(), false);
    for (std::size_t i = 0; i < cocycles.size(); ++i) {
        if (seen[i]) continue;
        reps.push_back(cocycles[i]);
        for (const auto& b : group) {
            CMatrix x = b.inverse() * cocycles[i] * phi(b);
            for (std::size_t j = 0; j < cocycles.size(); ++j)
                if (cocycles[j] == x) seen[j] = true;
        }
    }
    return reps;
}

}  // namespace

ReductivePart ReductivePart::named(const std::string& name, const FieldPtr& field, std::size_t n) {
    if (name == "SL") return {name, standard_sl_datum(n), PinnedRealization::standard_sl(field, n), {}, {}};
    if (name == "GL") return {name, standard_gl_datum(n), PinnedRealization::standard_gl(field, n), {}, {}};
    throw UnsupportedError("reductive stabilizer part must be SL or GL, got " + name);
}

StabilizerSpec StabilizerSpec::trivial(const FieldPtr& field, std::size_t n) {
    StabilizerSpec s;
    s.n = n;
    s.field = field;
    return s;
}

std::vector<CMatrix> StabilizerSpec::finite_or_identity() const {
    if (finite.empty()) return {CMatrix::identity(field, n)};
    return finite;
}

bool StabilizerSpec::identity_component_trivial() const { return !torus && unipotent.empty() && !reductive; }

bool StabilizerSpec::in_identity_component(const CMatrix& x) const {
    if (x.dim() != n) return false;
    if (reductive) {
        CycloNumber det = x.determinant();
        return reductive->name == "SL" ? det.is_one() : !det.is_zero();
    }
    if (!x.is_upper_triangular()) return false;
    std::vector<CycloNumber> d;
    for (std::size_t i = 0; i < n; ++i) {
        if (x(i, i).is_zero()) return false;
        d.push_back(x(i, i));
    }
    CMatrix t = CMatrix::diagonal(d);
    if (torus ? !torus->contains(t) : !t.is_identity()) return false;
    CMatrix u = t.inverse() * x;
    if (u.is_identity()) return true;
    return !unipotent.empty() && in_span(unipotent, log_unipotent(u));
}

bool StabilizerSpec::contains(const CMatrix& x) const {
    if (x.dim() != n) return false;
    for (const auto& f : finite_or_identity())
        if (in_identity_component(f.inverse() * x)) return true;
    return false;
}

std::vector<CMatrix> StabilizerSpec::generators() const {
    std::vector<CMatrix> out = finite;
    if (torus)
        for (auto& t : torus_generators(*torus, field)) out.push_back(std::move(t));
    for (const auto& x : unipotent) out.push_back(exp_nilpotent(x));
    if (reductive) {
        for (const auto& x : reductive->realization.root_vectors) {
            out.push_back(exp_nilpotent(x));
            out.push_back(exp_nilpotent(x.transpose()));
        }
        for (auto& t : torus_generators(reductive->realization.torus(), field)) out.push_back(std::move(t));
    }
    return out;
}

bool in_span(const std::vector<CMatrix>& basis, const CMatrix& x) {
    if (basis.empty()) return x.is_zero();
    const std::size_t n = x.dim(), len = n * n;
    auto flatten = [&](const CMatrix& m) {
        std::vector<CycloNumber> v;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v.push_back(m(i, j));
        return v;
    };
    // Row echelon form of the basis, then reduce x against it.
    std::vector<std::vector<CycloNumber>> rows;
    std::vector<std::size_t> pivots;
    auto reduce = [&](std::vector<CycloNumber> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const CycloNumber c = v[pivots[r]];
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < len; ++k) v[k] = v[k] - c * rows[r][k];
        }
        return v;
    };
    for (const auto& b : basis) {
        auto v = reduce(flatten(b));
        auto it = std::find_if(v.begin(), v.end(), [](const CycloNumber& c) { return !c.is_zero(); });
        if (it == v.end()) continue;
        const std::size_t p = static_cast<std::size_t>(it - v.begin());
        const CycloNumber inv = v[p].inverse();
        for (auto& c : v) c = c * inv;
        for (auto& row : rows) {
            const CycloNumber c = row[p];
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < len; ++k) row[k] = row[k] - c * v[k];
        }
        rows.push_back(std::move(v));
        pivots.push_back(p);
    }
    auto rest = reduce(flatten(x));
    return std::all_of(rest.begin(), rest.end(), [](const CycloNumber& c) { return c.is_zero(); });
}

std::vector<CMatrix> h1_of_twisted_stabilizer(const CMatrix& z, const AntiRegularMap& tau, const StabilizerSpec& h) {
    const AntiRegularMap phi = tau.then_inner(z);
    auto apply = [&](const CMatrix& x) { return phi(x); };
    if (h.reductive) throw UnsupportedError("H^1 of a twisted reductive stabilizer is not implemented");
    const std::vector<CMatrix> f = h.finite_or_identity();
    if (h.identity_component_trivial()) return finite_h1(f, apply);

    std::vector<CMatrix> connected = {CMatrix::identity(h.field, h.n)};
    if (h.torus) {
        auto m = h.torus->module_for(phi);
        if (!m) throw UnsupportedError("the twisted involution does not preserve the stabilizer torus");
        connected.clear();
        for (const auto& p : tate_hminus1(*m).representatives) connected.push_back(h.torus->realize(p, h.field));
    }
    // Unipotent radical: its twisted forms have trivial H^1.
    if (f.size() == 1) return connected;

    // Product rule when F is a phi-stable group commuting with the identity component.
    auto gens = h.generators();
    for (const auto& a : f) {
        if (!a.is_identity() && h.in_identity_component(a))
            throw UnsupportedError("finite part meets the identity component; the product is not direct");
        if (!contains_matrix(f, phi(a))) throw UnsupportedError("finite part is not stable under the twisted involution");
        for (const auto& b : f)
            if (!contains_matrix(f, a * b)) throw UnsupportedError("finite part is not a subgroup; H^1 assembly is unspecified");
        for (const auto& g : gens)
            if (a * g != g * a) throw UnsupportedError("finite part does not commute with the identity component");
    }
    std::vector<CMatrix> out;
    for (const auto& a : finite_h1(f, apply))
        for (const auto& t : connected) out.push_back(a * t);
    return out;
}

}  // namespace realpt
