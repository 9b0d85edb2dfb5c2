#include "realpt/pipeline.hpp"

#include "realpt/errors.hpp"

#include <algorithm>
#include <chrono>

namespace realpt {

namespace {

constexpr std::size_t kClosureSample = 12;

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}
    void lap(const std::string& stage) {
        auto now = std::chrono::steady_clock::now();
        out_.push_back({stage, std::chrono::duration<double>(now - start_).count()});
        start_ = now;
    }

private:
    std::vector<StageTiming>& out_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ProblemVerdict fail(const std::string& failure, const std::string& witness) { return {false, failure, witness}; }

// inn(g_y0) o tau and g_y0 tau(g_y0): the 2-cocycle whose splittings solve Problem A.
AntiRegularMap induced_map(const ProblemSpec& p) { return p.ambient.tau.then_inner(p.g_y0); }
CMatrix induced_h(const ProblemSpec& p) { return p.g_y0 * p.ambient.tau(p.g_y0); }

bool listed(const std::vector<CMatrix>& xs, const CMatrix& x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::RealPoint ? "RealPoint" : "NoRealPoint"; }

ProblemVerdict validate_problem(const ProblemSpec& p) {
    const auto& g = p.g_y0;
    const auto& h = p.stabilizer;
    if (p.field()->conductor() != p.conductor) return fail("conductor mismatch", std::to_string(p.conductor));
    if (g.dim() != p.ambient.n || h.n != p.ambient.n) return fail("size mismatch", std::to_string(g.dim()));
    auto inv = verify_involution(p.ambient.tau, p.ambient.generators(), p.seed);
    if (!inv.ok) return fail("tau is not an involution: " + inv.failure, inv.witness);
    if (!p.ambient.contains(g)) return fail("g_y0 is not in G", g.to_string());
    if (!h.finite.empty() && !h.finite.front().is_identity()) return fail("finite part must list the identity first", h.finite.front().to_string());
    const auto gens = h.generators();
    for (const auto& a : gens) {
        if (!p.ambient.contains(a)) return fail("stabilizer generator is not in G", a.to_string());
        if (!h.contains(a)) return fail("membership test rejects a generator", a.to_string());
    }
    for (std::size_t i = 0; i < std::min(gens.size(), kClosureSample); ++i)
        for (std::size_t j = 0; j < std::min(gens.size(), kClosureSample); ++j)
            if (!h.contains(gens[i] * gens[j])) return fail("membership test is not closed under products", (gens[i] * gens[j]).to_string());
    const CMatrix hx = induced_h(p);
    if (!h.contains(hx)) return fail("g_y0 tau(g_y0) is not in H", hx.to_string());
    const CMatrix ginv = g.inverse();
    for (const auto& a : gens) {
        CMatrix x = g * p.ambient.tau(a) * ginv;
        if (!h.contains(x)) return fail("g_y0 tau(a) g_y0^-1 is not in H", x.to_string());
    }
    return {};
}

ProblemAResult solve_problem_A(const ProblemSpec& p) {
    const StabilizerSpec& hs = p.stabilizer;
    const TwoCocycle cx(induced_map(p), induced_h(p), hs.generators());
    const auto identity = CMatrix::identity(p.field(), p.ambient.n);
    ProblemAResult out;

    auto finite = stepA1_finite(cx, hs.finite_or_identity(), [&](const CMatrix& x) { return hs.in_identity_component(x); });
    if (!finite.found()) {
        out.failing_stage = "finite";
        out.obstructions.push_back(finite.obstruction);
        return out;
    }
    for (std::size_t i = 0; i < finite.representatives.size(); ++i) {
        const CMatrix& a1 = finite.representatives[i];
        const TwoCocycle c1 = cx.twisted_by(a1);
        CMatrix a2 = identity, a3 = identity;
        std::size_t center = 0;
        if (hs.reductive) {
            if (hs.torus || !hs.unipotent.empty())
                throw UnsupportedError("a reductive stabilizer part cannot be combined with a torus or unipotent part");
            const auto& red = *hs.reductive;
            auto norm = normalize_to_pinning(c1, red.realization, red.datum, red.pinning_hint);
            auto res = stepA2_reductive(norm.f, norm.h, red.datum, red.realization, red.torus_hint);
            if (!res.found()) {
                out.obstructions.push_back("H² class outside im ρ_*: " + res.obstruction);
                continue;
            }
            a2 = *res.a * norm.a;
            center = res.witness_index;
        } else {
            if (hs.torus) {
                auto res = stepA2_torus(c1.f(), c1.h(), *hs.torus);
                if (!res.found()) {
                    out.obstructions.push_back("H² class nontrivial: " + res.obstruction);
                    continue;
                }
                a2 = *res.a;
            }
            const TwoCocycle c2 = c1.twisted_by(a2);
            if (!c2.h().is_identity()) {
                if (!c2.h().is_unipotent()) throw Error("internal: identity component remainder is not unipotent");
                a3 = *stepA3_unipotent(c2).a;
            }
        }
        CMatrix a = a3 * a2 * a1;
        if (!cx.splits(a)) throw Error("internal: assembled splitting element failed verification");
        out.a = a;
        out.a1 = a1;
        out.a2 = a2;
        out.a3 = a3;
        out.z = a * p.g_y0;
        out.finite_class = i;
        out.center_index = center;
        return out;
    }
    out.failing_stage = hs.reductive ? "reductive" : "torus";
    return out;
}

std::pair<Certificate, std::size_t> stepB_descend(const CMatrix& z, const ProblemSpec& p) {
    const AntiRegularMap& tau = p.ambient.tau;
    const AntiRegularMap phi = tau.then_inner(z);
    for (const auto& a : p.stabilizer.generators()) {
        CMatrix x = phi(a);
        if (!p.stabilizer.contains(x) || phi(x) != a)
            throw ValidationError("inn(z) o tau is not an involution of H at " + a.to_string());
    }
    auto real_point = [&](const CMatrix& h, const H1GResult& r) {
        Certificate c;
        c.verdict = Verdict::RealPoint;
        c.g01 = r.g01;
        c.z_prime = h * z;
        c.z = z;
        c.h_j = h;
        c.hilbert90_candidates = r.candidates;
        return c;
    };
    const CMatrix identity = CMatrix::identity(p.field(), p.ambient.n);
    // The neutral class needs no H^1 of the stabilizer, so try it first.
    auto first = h1G_decompose(z, p.ambient, p.seed);
    if (first.trivial()) return {real_point(identity, first), 0};
    const auto reps = h1_of_twisted_stabilizer(z, tau, p.stabilizer);
    if (reps.empty() || !reps.front().is_identity()) throw Error("internal: H^1 representatives must start with the identity");
    for (std::size_t j = 1; j < reps.size(); ++j) {
        auto r = h1G_decompose(reps[j] * z, p.ambient, p.seed);
        if (r.trivial()) return {real_point(reps[j], r), j};
    }
    Certificate c;
    c.verdict = Verdict::NoRealPoint;
    c.failing_stage = "descent";
    c.obstruction = "H¹ class nontrivial";
    return {c, 0};
}

RunReport solve(const ProblemSpec& p) {
    RunReport report;
    StageClock clock(report.timings);
    auto valid = validate_problem(p);
    if (!valid.ok) throw ValidationError(valid.failure + ": " + valid.witness);
    clock.lap("validate");
    auto a = solve_problem_A(p);
    clock.lap("splitting");
    if (!a.found()) {
        report.certificate.failing_stage = a.failing_stage;
        std::string joined;
        for (const auto& o : a.obstructions) joined += (joined.empty() ? "" : "; ") + o;
        report.certificate.obstruction = a.failing_stage == "finite" ? "empty E^f_γ-squares" : joined;
        return report;
    }
    report.finite_class = a.finite_class;
    report.center_index = a.center_index;
    auto [cert, j] = stepB_descend(*a.z, p);
    clock.lap("descent");
    if (cert.verdict == Verdict::RealPoint) {
        cert.a = a.a;
        cert.a1 = a.a1;
        cert.a2 = a.a2;
        cert.a3 = a.a3;
    }
    report.certificate = cert;
    report.h1_index = j;
    return report;
}

CertificateCheck verify_certificate(const Certificate& c, const ProblemSpec& p) {
    CertificateCheck out;
    auto check = [&](const std::string& name, bool ok) {
        (ok ? out.passed : out.failures).push_back(name);
        out.ok = out.ok && ok;
        return ok;
    };
    if (c.verdict == Verdict::NoRealPoint) {
        check("no real point fields are empty", !c.g01 && !c.z_prime && !c.z && !c.h_j && !c.a && !c.a1 && !c.a2 && !c.a3 &&
                                                    c.hilbert90_candidates.empty());
        RunReport replay;
        try {
            replay = solve(p);
        } catch (const Error& e) {
            check(std::string("replay runs: ") + e.what(), false);
            return out;
        }
        check("replay verdict", replay.certificate.verdict == Verdict::NoRealPoint);
        check("replay stage", replay.certificate.failing_stage == c.failing_stage);
        check("replay obstruction", replay.certificate.obstruction == c.obstruction);
        return out;
    }
    if (!check("real point fields present", c.g01 && c.z_prime && c.z && c.h_j && c.a && c.a1 && c.a2 && c.a3 &&
                                                c.failing_stage.empty() && c.obstruction.empty()))
        return out;
    const auto& tau = p.ambient.tau;
    const auto& h = p.stabilizer;
    const std::size_t n = p.ambient.n;
    for (const auto* m : {&*c.g01, &*c.z_prime, &*c.z, &*c.h_j, &*c.a, &*c.a1, &*c.a2, &*c.a3})
        if (m->dim() != n || m->field() != p.field()) {
            check("matrix shapes and conductor", false);
            return out;
        }
    if (!check("g01 invertible", !c.g01->determinant().is_zero())) return out;
    if (!check("z invertible", !c.z->determinant().is_zero())) return out;
    check("g01 in G", p.ambient.contains(*c.g01));
    check("z' = g01^-1 tau(g01)", c.g01->inverse() * tau(*c.g01) == *c.z_prime);
    check("z' tau(z') = 1", (*c.z_prime * tau(*c.z_prime)).is_identity());
    check("z' g_y0^-1 in H", h.contains(*c.z_prime * p.g_y0.inverse()));
    check("h_j in H", h.contains(*c.h_j));
    check("z' = h_j z", *c.h_j * *c.z == *c.z_prime);
    check("z = a g_y0", *c.a * p.g_y0 == *c.z);
    check("a = a3 a2 a1", *c.a3 * *c.a2 * *c.a1 == *c.a);
    check("a1 in finite part", listed(h.finite_or_identity(), *c.a1));
    check("a2 in identity component", h.in_identity_component(*c.a2));
    check("a3 unipotent in identity component", c.a3->is_unipotent() && h.in_identity_component(*c.a3));
    check("a f(a) h = 1", (*c.a * induced_map(p)(*c.a) * induced_h(p)).is_identity());
    if (out.ok) {
        auto canonical = h1G_decompose(*c.z_prime, p.ambient, p.seed);
        check("g01 canonical", canonical.g01 && *canonical.g01 == *c.g01 && canonical.candidates == c.hilbert90_candidates);
    }
    return out;
}

std::vector<RealOrbit> enumerate_real_orbits(const Certificate& c, const ProblemSpec& p) {
    if (c.verdict != Verdict::RealPoint || !c.z_prime) throw PreconditionError("orbit enumeration needs a real point");
    std::vector<RealOrbit> out;
    for (const auto& h : h1_of_twisted_stabilizer(*c.z_prime, p.ambient.tau, p.stabilizer)) {
        auto r = h1G_decompose(h * *c.z_prime, p.ambient, p.seed);
        if (r.trivial()) out.push_back({h, *r.g01});
    }
    return out;
}

}  // namespace realpt
