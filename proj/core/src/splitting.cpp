#include "realpt/splitting.hpp"

#include "realpt/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace realpt {

namespace {

CMatrix diagonal_part(const CMatrix& x) {
    std::vector<CycloNumber> d;
    for (std::size_t i = 0; i < x.dim(); ++i) d.push_back(x(i, i));
    return CMatrix::diagonal(d);
}

bool commutes_with(const CMatrix& z, const std::vector<CMatrix>& xs) {
    for (const auto& x : xs)
        if (z * x != x * z) return false;
    return true;
}

// Gamma-fixed points of a finite module, identity first, in lexicographic angle order.
std::vector<QuasiTorusPoint> fixed_points(const GammaModule& m) {
    const long e = m.torsion_exponent().get_si();
    std::vector<QuasiTorusPoint> out;
    std::vector<long> k(m.rank(), 0);
    for (;;) {
        std::vector<Rational> angles;
        for (long x : k) angles.push_back(frac(x, e));
        auto p = QuasiTorusPoint::from_angles(angles);
        if (is_valid_point(m, p) && gamma_act(m, p) == p) out.push_back(p);
        std::size_t i = k.size();
        while (i > 0 && ++k[i - 1] == e) k[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

// Polar solution x of m x = target (angles mod 1, log-moduli exactly), integral exponents preferred.
std::optional<QuasiTorusPoint> solve_polar(const IntMatrix& m, const std::vector<Polar>& target) {
    std::vector<Rational> angles;
    for (const auto& p : target) angles.push_back(p.angle);
    auto theta = solve_mod_one(m, angles);
    if (!theta) return std::nullopt;
    std::set<Integer> primes;
    for (const auto& p : target)
        for (const auto& [q, e] : p.modulus.exponents()) primes.insert(q);
    std::vector<Modulus> moduli(m.cols());
    for (const auto& q : primes) {
        std::vector<Rational> rhs(target.size());
        bool integral = true;
        for (std::size_t i = 0; i < target.size(); ++i) {
            auto it = target[i].modulus.exponents().find(q);
            if (it != target[i].modulus.exponents().end()) rhs[i] = it->second;
            integral = integral && is_integral(rhs[i]);
        }
        std::optional<std::vector<Rational>> x;
        if (integral) {
            std::vector<Integer> b;
            for (const auto& v : rhs) b.push_back(v.get_num());
            if (auto xi = solve_integer(m, b)) x = std::vector<Rational>(xi->begin(), xi->end());
        }
        if (!x) x = solve_rational(m, rhs);
        if (!x) return std::nullopt;
        for (std::size_t k = 0; k < m.cols(); ++k)
            if ((*x)[k] != 0) moduli[k] = moduli[k] * Modulus::from_rational(Rational(q)).pow((*x)[k]);
    }
    QuasiTorusPoint p;
    for (std::size_t k = 0; k < m.cols(); ++k) p.coords.emplace_back(moduli[k], (*theta)[k]);
    return p;
}

}  // namespace

CocycleVerdict verify_two_cocycle(const AntiRegularMap& f, const CMatrix& h, const std::vector<CMatrix>& generators,
                                  std::uint64_t seed) {
    CocycleVerdict v;
    if (f(h) != h) {
        v.ok = false;
        v.failure = "f(h) != h";
        v.witness = h.to_string();
        return v;
    }
    const CMatrix hinv = h.inverse();
    auto check = [&](const CMatrix& g, const std::string& name) {
        if (f(f(g)) == h * g * hinv) return true;
        v.ok = false;
        v.failure = "f^2 != inn(h)";
        v.witness = name;
        return false;
    };
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (!check(generators[i], "generator " + std::to_string(i))) return v;
    if (generators.empty()) return v;
    std::vector<CMatrix> inverses;
    for (const auto& g : generators) inverses.push_back(g.inverse());
    for (const auto& w : sample_words(generators.size(), 16, seed))
        if (!check(evaluate_word(w, generators, inverses), word_to_string(w))) return v;
    return v;
}

TwoCocycle::TwoCocycle(AntiRegularMap f, CMatrix h, const std::vector<CMatrix>& generators)
    : f_(std::move(f)), h_(std::move(h)) {
    auto v = verify_two_cocycle(f_, h_, generators);
    if (!v.ok) throw ValidationError("not a 2-cocycle: " + v.failure + " at " + v.witness);
}

TwoCocycle TwoCocycle::twisted_by(const CMatrix& a) const { return TwoCocycle(f_.then_inner(a), a * f_(a) * h_); }

bool TwoCocycle::splits(const CMatrix& a) const { return (a * f_(a) * h_).is_identity(); }

SplittingResult stepA1_finite(const TwoCocycle& c, const std::vector<CMatrix>& elements, const Membership& kernel) {
    const Membership in_kernel = kernel ? kernel : [](const CMatrix& x) { return x.is_identity(); };
    auto index_of = [&](const CMatrix& x) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (in_kernel(elements[i].inverse() * x)) return i;
        return std::nullopt;
    };
    for (const auto& x : elements)
        if (!index_of(c.f()(x))) throw ValidationError("finite part is not stable under f: " + x.to_string());

    SplittingResult r;
    std::vector<std::size_t> solutions;
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (in_kernel(elements[i] * c.f()(elements[i]) * c.h())) solutions.push_back(i);
    if (solutions.empty()) {
        r.obstruction = "no element of the finite part squares to 1 in the extension";
        return r;
    }
    // Conjugating a x by b gives (b a f(b)^-1) x.
    std::vector<std::size_t> parent(solutions.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t s = 0; s < solutions.size(); ++s) {
        const CMatrix& a = elements[solutions[s]];
        for (const auto& b : elements) {
            auto j = index_of(b * a * c.f()(b).inverse());
            auto pos = j ? std::find(solutions.begin(), solutions.end(), *j) : solutions.end();
            if (pos == solutions.end()) throw Error("internal: conjugate of a splitting element does not split");
            std::size_t t = static_cast<std::size_t>(pos - solutions.begin());
            parent[find_root(parent, s)] = find_root(parent, t);
        }
    }
    std::set<std::size_t> seen;
    for (std::size_t s = 0; s < solutions.size(); ++s)
        if (seen.insert(find_root(parent, s)).second) r.representatives.push_back(elements[solutions[s]]);
    r.a = elements[solutions.front()];
    r.witness_index = solutions.front();
    return r;
}

SplittingResult stepA3_unipotent(const TwoCocycle& c) {
    if (!c.h().is_unipotent()) throw PreconditionError("stepA3 needs a unipotent h");
    CMatrix r = exp_nilpotent(log_unipotent(c.h()).scaled(frac(1, 2)));
    SplittingResult out;
    out.a = r.inverse();
    if (!c.splits(*out.a)) throw Error("internal: unipotent splitting failed verification");
    out.representatives = {*out.a};
    return out;
}

PinningNormalization normalize_to_pinning(const TwoCocycle& c, const PinnedRealization& r,
                                          const BasedRootDatum& datum, const std::optional<CMatrix>& hint) {
    const FieldPtr& field = c.h().field();
    CMatrix a0 = hint ? *hint : CMatrix::identity(field, r.n);
    AntiRegularMap f1 = c.f().then_inner(a0);
    auto act = pinning_action(f1, r);
    if (!act) {
        if (hint) throw UnsupportedError("the hint does not carry the pinned torus and Borel to themselves");
        throw UnsupportedError("f does not preserve the pinned torus and Borel; supply a conjugating hint a");
    }
    // inn(t) o f1 sends X_alpha to nu(alpha)(t) c_alpha X_nu(alpha); solve nu(alpha)(t) = 1 / c_alpha.
    const IntMatrix& roots = datum.simple_roots();
    IntMatrix m(act->nu.size(), datum.rank());
    std::vector<Polar> target;
    for (std::size_t al = 0; al < act->nu.size(); ++al) {
        for (std::size_t k = 0; k < datum.rank(); ++k) m(al, k) = roots(k, act->nu[al]);
        target.push_back(Polar::from_cyclo(act->scale[al]).inverse());
    }
    auto u = solve_polar(m, target);
    if (!u) throw DomainError("root scaling system has no solution on the torus");
    CMatrix t = realize_torus_point(*u, r, field);
    PinningNormalization n;
    n.a = t * a0;
    n.f = c.f().then_inner(n.a);
    n.h = n.a * c.f()(n.a) * c.h();
    auto check = pinning_action(n.f, r);
    if (!check || !std::all_of(check->scale.begin(), check->scale.end(), [](const CycloNumber& s) { return s.is_one(); }))
        throw Error("internal: torus correction did not fix the pinning");
    if (!n.h.is_diagonal() || !commutes_with(n.h, r.root_vectors) || !r.torus().coordinates(n.h))
        throw ValidationError("normalized h is not central; the input is not a 2-cocycle on this group");
    return n;
}

SplittingResult stepA2_reductive(const AntiRegularMap& f, const CMatrix& h, const BasedRootDatum& datum,
                                 const PinnedRealization& r, const std::optional<CMatrix>& torus_hint) {
    const FieldPtr& field = h.field();
    auto sigma_star = cocharacter_action(f, r);
    if (!sigma_star) throw PreconditionError("f must preserve the pinned torus");
    const IntMatrix sigma = sigma_star->transpose();
    const GammaModule center = center_module(datum, sigma);
    const CenterCover cover = csc_and_rho(datum, sigma);
    auto h_point = r.torus().coordinates(h);
    if (!h_point || !commutes_with(h, r.root_vectors)) throw PreconditionError("h must be central");

    // The square-root problem lives on T^sc, possibly after moving to the hinted torus.
    AntiRegularMap f_sqrt = f;
    GammaModule tsc = GammaModule::free(cover.csc.involution());
    if (torus_hint) {
        f_sqrt = f.then_inner(torus_hint->inverse() * f(*torus_hint));
        auto s2 = cocharacter_action(f_sqrt, r);
        if (!s2) throw ValidationError("the torus hint does not give a map preserving the torus");
        tsc = GammaModule::free(csc_and_rho(datum, s2->transpose()).csc.involution());
    }

    const CohomologyGroup h2 = tate_h0(center);
    SplittingResult out;
    out.obstruction_class = h2_decompose(*h_point, center, h2).index;
    std::set<std::size_t> image;
    const auto points = fixed_points(cover.csc);
    for (std::size_t j = 0; j < points.size(); ++j) {
        const QuasiTorusPoint rho_z = push_point(cover.rho, points[j]);
        image.insert(h2_decompose(rho_z, center, h2).index);
        auto d = h2_decompose(*h_point * rho_z, center, h2);
        if (!d.trivial()) continue;
        // c gamma(c) z_j = 1 and t gamma(t) = z^sc give b = c rho(t).
        auto t = h2_witness(points[j], QuasiTorusPoint::identity(points[j].size()), tsc);
        if (!t) {
            if (torus_hint) throw UnsupportedError("the hinted torus has no square root of the central element");
            throw UnsupportedError("the pinned torus is not fundamental for f; supply a fundamental torus hint");
        }
        CMatrix bt = realize_torus_point(push_point(cover.rho, *t), r, field);
        if (torus_hint) bt = *torus_hint * bt * torus_hint->inverse();
        CMatrix b = realize_torus_point(d.witness.inverse(), r, field) * bt;
        if (!(b * f(b) * h).is_identity()) throw Error("internal: reductive splitting failed verification");
        out.a = b;
        out.witness_index = j;
        out.obstruction.clear();
        out.obstruction_class.reset();
        out.representatives = {b};
        return out;
    }
    out.image_classes.assign(image.begin(), image.end());
    out.obstruction = "class of h in H^2 of the center lies outside the image of the simply connected center";
    return out;
}

SplittingResult stepA2_torus(const AntiRegularMap& f, const CMatrix& h, const DiagonalQuasiTorus& torus) {
    auto module = torus.module_for(f);
    if (!module) throw PreconditionError("f must preserve the diagonal torus");
    const CMatrix d = diagonal_part(h);
    auto point = torus.coordinates(d);
    if (!point) throw PreconditionError("h is not in the torus modulo unipotents");
    auto dec = h2_decompose(*point, *module);
    SplittingResult out;
    if (!dec.trivial()) {
        out.obstruction_class = dec.index;
        out.obstruction = "class of h in H^2 of the torus is nontrivial";
        return out;
    }
    CMatrix b = torus.realize(dec.witness.inverse(), h.field());
    if (!diagonal_part(b * f(b) * d).is_identity()) throw Error("internal: torus splitting failed verification");
    out.a = b;
    out.representatives = {b};
    return out;
}

}  // namespace realpt
