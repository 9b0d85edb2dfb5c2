// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "mutation.hpp"
#include "oracles.hpp"
#include "realpt/certificate.hpp"
#include "realpt/root_datum.hpp"
#include "realpt/splitting.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace realpt;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Accumulates failures; the first one is reported.
struct Tally {
    bool ok = true;
    std::string first;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) first = what;
        ok = ok && cond;
    }
    Outcome done(const std::string& summary) const { return {ok, ok ? summary : first}; }
};

FieldPtr q4() { return CycloField::make(4); }

CMatrix minus_identity(std::size_t n) { return CMatrix::identity(q4(), n).scaled(Rational(-1)); }

AntiRegularMap compact(const FieldPtr& f, std::size_t n) {
    return AntiRegularMap(InvolutionMode::ConjugationTransposeInverseInner, CMatrix::identity(f, n));
}

// Cohomology of a torus by brute force over root-of-unity points. The positive real
// part of a torus point is uniquely 2-divisible and contributes nothing, so only
// unit-modulus points matter; boundaries are drawn from the grid of twice the
// denominator so that halving an angle is always possible.
std::pair<std::size_t, std::size_t> brute_torus_tate(const GammaModule& M, long n) {
    std::vector<QuasiTorusPoint> fixed, cocycles, norms, diffs;
    for (const auto& p : testing::all_points(M, n)) {
        auto gp = gamma_act(M, p);
        if (gp == p) fixed.push_back(p);
        if ((p * gp).is_identity()) cocycles.push_back(p);
    }
    for (const auto& s : testing::all_points(M, 2 * n)) {
        auto gs = gamma_act(M, s);
        norms.push_back(s * gs);
        diffs.push_back(s.inverse() * gs);
    }
    return {testing::brute_classes(fixed, norms), testing::brute_classes(cocycles, diffs)};
}

Outcome basic_tori() {
    Tally t;
    struct Row {
        const char* name;
        IntMatrix sigma;
        long h2, h1;
    };
    const std::vector<Row> rows = {{"split Gm", IntMatrix{{1}}, 2, 1},
                                   {"Weil restriction", IntMatrix{{0, 1}, {1, 0}}, 1, 1},
                                   {"norm-one torus", IntMatrix{{-1}}, 1, 2}};
    for (const auto& r : rows) {
        GammaModule M = GammaModule::free(r.sigma);
        auto h0 = tate_h0(M), hm1 = tate_hminus1(M);
        t.expect(h0.order == r.h2, std::string(r.name) + ": H2 order");
        t.expect(hm1.order == r.h1, std::string(r.name) + ": H1 order");
        auto [b2, b1] = brute_torus_tate(M, 4);
        t.expect(Integer(static_cast<long>(b2)) == h0.order, std::string(r.name) + ": H2 brute force");
        t.expect(Integer(static_cast<long>(b1)) == hm1.order, std::string(r.name) + ": H1 brute force");
    }
    return t.done("H2 = (Z/2, 1, 1), H1 = (1, 1, Z/2), brute force agrees");
}

Outcome unipotent_suite() {
    Tally t;
    auto f = q4();
    const CycloNumber i = CycloNumber::zeta(f, 1);
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> numer(-100, 100), denom(1, 100);
    auto random_nilpotent = [&](std::size_t n, bool gaussian) {
        CMatrix x = CMatrix::identity(f, n).scaled(Rational(0));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) {
                x(r, c) = CycloNumber(f, frac(numer(rng), denom(rng)));
                if (gaussian) x(r, c) += i * CycloNumber(f, frac(numer(rng), denom(rng)));
            }
        return x;
    };
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        // Even trials: plain conjugation with a real unipotent h. Odd trials: an inner twist
        // by a complex unipotent u with h = u conj(u).
        AntiRegularMap fmap = AntiRegularMap::conjugation(f, n);
        CMatrix h = exp_nilpotent(random_nilpotent(n, false));
        if (trial % 2) {
            CMatrix u = exp_nilpotent(random_nilpotent(n, true));
            fmap = AntiRegularMap(InvolutionMode::ConjugationInner, u);
            h = u * u.conj();
        }
        auto r = stepA3_unipotent(TwoCocycle(fmap, h, {h}));
        t.expect(r.found(), "trial " + std::to_string(trial) + ": not found");
        if (r.found()) t.expect((*r.a * fmap(*r.a) * h).is_identity(), "trial " + std::to_string(trial) + ": a f(a) h != 1");
    }
    return t.done("500/500 split exactly");
}

Outcome conjugacy_count() {
    Tally t;
    const auto groups = testing::small_groups();
    std::size_t checked = 0;
    for (const auto& g : groups) {
        const FieldPtr f = g.front().field();
        t.expect(g.size() <= 16, "group larger than 16");
        const std::size_t n = g.front().dim();
        std::vector<AntiRegularMap> maps = {AntiRegularMap::conjugation(f, n)};
        for (const auto& u : g) maps.push_back(AntiRegularMap(InvolutionMode::ConjugationInner, u));
        for (const auto& fm : maps)
            for (const auto& h : g) {
                if (!verify_two_cocycle(fm, h, g).ok) continue;
                bool stable = true;
                for (const auto& x : g) stable = stable && std::find(g.begin(), g.end(), fm(x)) != g.end();
                if (!stable) continue;
                auto r = stepA1_finite(TwoCocycle(fm, h, g), g);
                t.expect(r.representatives.size() == testing::orbit_count(g, fm, h),
                         "order " + std::to_string(g.size()) + ": class count differs from orbit count");
                ++checked;
            }
    }
    t.expect(checked > 50, "too few cocycles exercised");
    return t.done(std::to_string(checked) + " cocycles over " + std::to_string(groups.size()) + " groups");
}

const std::vector<std::string> kRankLe4 = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"};

Outcome fundamental_tori() {
    Tally t;
    std::size_t cases = 0;
    for (const auto& name : kRankLe4) {
        IntMatrix c = cartan_matrix(name);
        auto datum = BasedRootDatum::simply_connected(c);
        for (const auto& nu : diagram_involutions(c)) {
            ++cases;
            auto d = fundamental_torus_decomposition(datum, nu);
            t.expect(d.m + 2 * d.n == c.rows(), name + ": m + 2n != rank");
            t.expect(abs(d.basis_change.determinant()) == 1, name + ": basis change not unimodular");
            t.expect(d.basis_change * d.block == d.twisted * d.basis_change, name + ": block mismatch");
            auto rp = verify_r_perp(datum, nu);
            t.expect(rp.ok && rp.witnessed == datum.roots().size(), name + ": r-perp");
        }
    }
    return t.done(std::to_string(cases) + " (type, involution) pairs");
}

Outcome center_orders() {
    Tally t;
    std::ostringstream out;
    for (const auto& name : kRankLe4) {
        IntMatrix c = cartan_matrix(name);
        auto center = center_module(BasedRootDatum::simply_connected(c), IntMatrix::identity(c.rows()));
        Integer order = 1;
        for (const auto& d : smith_normal_form(center.relations()).diagonal()) order *= d;
        const Integer det = abs(c.determinant());
        t.expect(order == det, name + ": |C^sc| != det");
        t.expect(Integer(static_cast<long>(testing::center_points(c).size())) == det, name + ": point count != det");
        if (name == "A2" || name == "A3") out << name << " -> " << order << ' ';
    }
    return t.done(out.str() + "(all rank <= 4 agree)");
}

ProblemSpec parse_problem(const char* text) { return problem_from_json(parse_json_text(text, "acceptance")); }

const char* kCompactCircle = R"({
  "conductor": 4,
  "ambient": {"group": "torus", "n": 1, "involution": {"mode": "conj_transpose_inverse_inner"},
              "exponents": [[1]], "relations": [[]]},
  "stabilizer": {},
  "g_y0": [[-1]]
})";

const char* kMu2 = R"({
  "conductor": 4,
  "ambient": {"group": "GL", "n": 1, "involution": {"mode": "conj"}},
  "stabilizer": {"finite": [[["1"]], [["-1"]]]},
  "g_y0": [["-1"]]
})";

const char* kSl2 = R"({
  "conductor": 4,
  "ambient": {"group": "SL", "n": 2, "involution": {"mode": "conj"}},
  "stabilizer": {"finite": [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]]},
  "g_y0": [[-1, 0], [0, -1]]
})";

Outcome end_to_end() {
    Tally t;
    using clock = std::chrono::steady_clock;
    auto timed = [&](const char* name, const std::function<void()>& body) {
        auto start = clock::now();
        body();
        t.expect(clock::now() - start < std::chrono::seconds(1), std::string(name) + ": slower than 1 s");
    };

    timed("circle", [&] {
        auto p = parse_problem(kCompactCircle);
        auto r = solve(p);
        t.expect(r.certificate.verdict == Verdict::NoRealPoint, "circle: expected NoRealPoint");
        t.expect(verify_certificate_document(certificate_document(r.certificate, p)).ok, "circle: certificate rejected");
    });

    timed("mu2", [&] {
        auto p = parse_problem(kMu2);
        auto r = solve(p);
        const CMatrix i = CMatrix::diagonal({CycloNumber::zeta(q4(), 1)});
        t.expect(r.certificate.verdict == Verdict::RealPoint, "mu2: expected RealPoint");
        t.expect(r.certificate.g01 && *r.certificate.g01 == i, "mu2: g01 != i");
        t.expect(verify_certificate_document(certificate_document(r.certificate, p)).ok, "mu2: certificate rejected");
    });

    timed("SL2", [&] {
        auto p = parse_problem(kSl2);
        const CMatrix z = minus_identity(2);
        auto r = h1G_decompose(z, p.ambient);
        t.expect(r.trivial() && r.g01.has_value(), "SL2: no witness");
        if (!r.g01) return;
        const CMatrix& g = *r.g01;
        // Independent arithmetic: gamma(g) = conj(g) entrywise, det by the 2x2 formula.
        CMatrix gg = g.conj();
        bool negated = true;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) negated = negated && gg(a, b) == -g(a, b);
        t.expect(negated, "SL2: gamma(g) != -g");
        t.expect((g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).is_one(), "SL2: det g != 1");
        t.expect(g.inverse() * gg == z, "SL2: g^-1 gamma(g) != z");
        auto s = solve(p);
        t.expect(s.certificate.verdict == Verdict::RealPoint, "SL2: expected RealPoint");
        t.expect(verify_certificate_document(certificate_document(s.certificate, p)).ok, "SL2: certificate rejected");
    });
    return t.done("circle NoRealPoint; mu2 g01 = i verified; SL2 witness verified");
}

Outcome stepA2_obstruction() {
    Tally t;
    auto f = q4();
    auto gm = stepA2_reductive(AntiRegularMap::conjugation(f, 1), minus_identity(1), BasedRootDatum::torus(1),
                               PinnedRealization::diagonal(f, 1));
    t.expect(!gm.found(), "expected NotFound");
    t.expect(gm.obstruction_class && *gm.obstruction_class == 1, "obstruction class is not the nontrivial one");
    t.expect(gm.image_classes == std::vector<std::size_t>{0}, "image of rho is not trivial");
    // The nontrivial class of H2(split Gm) is the one represented by -1.
    auto h2 = tate_h0(GammaModule::free(IntMatrix{{1}}));
    t.expect(h2.order == 2 && h2.representatives.size() == 2, "H2(split Gm) != Z/2");
    return t.done("NotFound, class 1 not in im rho_* = {0}");
}

Outcome certificate_mutations() {
    Tally t;
    std::vector<Json> docs;
    for (const char* text : {kCompactCircle, kMu2, kSl2}) {
        auto p = parse_problem(text);
        docs.push_back(certificate_document(solve(p).certificate, p));
        t.expect(verify_certificate_document(docs.back()).ok, "unmutated certificate rejected");
    }
    std::mt19937_64 rng(99);
    std::size_t rejected = 0;
    for (int k = 0; k < 100; ++k) {
        Json mutated = testing::random_mutation(docs[static_cast<std::size_t>(k) % docs.size()], rng);
        bool ok = verify_certificate_document(mutated).ok;
        rejected += !ok;
        t.expect(!ok, "mutation " + std::to_string(k) + " accepted");
    }
    return t.done(std::to_string(rejected) + "/100 mutations rejected");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double limit_s;  // 0 means no time limit
    };
    const std::vector<Criterion> criteria = {
        {"basic tori table", basic_tori, 1},
        {"unipotent splitting suite", unipotent_suite, 30},
        {"conjugacy-count law", conjugacy_count, 0},
        {"fundamental torus decompositions", fundamental_tori, 5},
        {"center orders", center_orders, 0},
        {"end-to-end verdicts", end_to_end, 0},
        {"split Gm obstruction", stepA2_obstruction, 0},
        {"certificate robustness", certificate_mutations, 0},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto& c = criteria[k];
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && c.limit_s > 0 && secs >= c.limit_s) o = {false, "exceeded time limit"};
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << k + 1 << "] " << c.name << ": " << o.detail << " ("
                  << static_cast<long>(secs * 1000) << " ms)\n";
    }
    return failures == 0 ? 0 : 1;
}
