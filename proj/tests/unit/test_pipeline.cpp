#include <doctest.h>

#include "realpt/errors.hpp"
#include "realpt/pipeline.hpp"

using namespace realpt;

namespace {

FieldPtr q4() { return CycloField::make(4); }

CycloNumber num(const Rational& x) { return CycloNumber(q4(), x); }
CycloNumber imag() { return CycloNumber::zeta(q4(), 1); }
CMatrix scalar1(const CycloNumber& x) { return CMatrix::diagonal({x}); }

AntiRegularMap compact(std::size_t n) {
    return AntiRegularMap(InvolutionMode::ConjugationTransposeInverseInner, CMatrix::identity(q4(), n));
}

StabilizerSpec plus_minus(std::size_t n) {
    auto h = StabilizerSpec::trivial(q4(), n);
    h.finite = {CMatrix::identity(q4(), n), CMatrix::identity(q4(), n).scaled(Rational(-1))};
    return h;
}

ProblemSpec problem(Ambient g, StabilizerSpec h, CMatrix gy0) {
    ProblemSpec p;
    p.conductor = 4;
    p.ambient = std::move(g);
    p.stabilizer = std::move(h);
    p.g_y0 = std::move(gy0);
    return p;
}

ProblemSpec mu2_in_gl1() {
    return problem(Ambient::general_linear(AntiRegularMap::conjugation(q4(), 1)), plus_minus(1), scalar1(num(-1)));
}

ProblemSpec compact_circle() {
    auto g = Ambient::diagonal_torus(compact(1), DiagonalQuasiTorus(IntMatrix{{1}}, IntMatrix(1, 0)));
    return problem(g, StabilizerSpec::trivial(q4(), 1), scalar1(num(-1)));
}

// GL2 with H = {diag(s, 1/s)}; the swap makes the twisted stabilizer a compact circle.
ProblemSpec circle_stabilizer() {
    auto h = StabilizerSpec::trivial(q4(), 2);
    h.torus = DiagonalQuasiTorus(IntMatrix{{1, -1}}, IntMatrix(1, 0));
    return problem(Ambient::general_linear(AntiRegularMap::conjugation(q4(), 2)), h,
                   CMatrix::from_rationals(q4(), {{0, 1}, {1, 0}}));
}

}  // namespace

TEST_CASE("problem validation") {
    CHECK(validate_problem(mu2_in_gl1()).ok);
    auto bad = mu2_in_gl1();
    bad.g_y0 = scalar1(imag() + imag());
    auto v = validate_problem(bad);
    CHECK_FALSE(v.ok);
    CHECK(v.failure == "g_y0 tau(g_y0) is not in H");

    auto whole = StabilizerSpec::trivial(q4(), 2);
    whole.reductive = ReductivePart::named("SL", q4(), 2);
    auto all = problem(Ambient::special_linear(AntiRegularMap::conjugation(q4(), 2)), whole,
                       CMatrix::from_rationals(q4(), {{1, 1}, {0, 1}}));
    CHECK(validate_problem(all).ok);
}

TEST_CASE("problem A") {
    auto trivial = problem(Ambient::general_linear(AntiRegularMap::conjugation(q4(), 1)), StabilizerSpec::trivial(q4(), 1),
                           scalar1(num(-1)));
    auto a = solve_problem_A(trivial);
    REQUIRE(a.found());
    CHECK(*a.z == trivial.g_y0);

    auto circle = solve_problem_A(compact_circle());
    REQUIRE(circle.found());
    CHECK(*circle.z == scalar1(num(-1)));

    auto forced = problem(Ambient::general_linear(compact(1)), plus_minus(1), scalar1(imag()));
    auto none = solve_problem_A(forced);
    CHECK_FALSE(none.found());
    CHECK(none.failing_stage == "finite");

    auto swapped = solve_problem_A(circle_stabilizer());
    REQUIRE(swapped.found());
    CHECK((*swapped.z * swapped.z->conj()).is_identity());
}

TEST_CASE("H^1 of twisted stabilizers") {
    const auto tau1 = AntiRegularMap::conjugation(q4(), 1);
    CHECK(h1_of_twisted_stabilizer(scalar1(num(1)), tau1, StabilizerSpec::trivial(q4(), 1)).size() == 1);

    auto p = circle_stabilizer();
    auto reps = h1_of_twisted_stabilizer(p.g_y0, p.ambient.tau, p.stabilizer);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].is_identity());
    CHECK(reps[1] == CMatrix::identity(q4(), 2).scaled(Rational(-1)));

    auto fu = plus_minus(2);
    fu.unipotent = {CMatrix::from_rationals(q4(), {{0, 1}, {0, 0}})};
    CHECK(h1_of_twisted_stabilizer(CMatrix::identity(q4(), 2), AntiRegularMap::conjugation(q4(), 2), fu).size() == 2);
}

TEST_CASE("H^1 of the ambient group") {
    auto gl1 = Ambient::general_linear(AntiRegularMap::conjugation(q4(), 1));
    CHECK(h1G_decompose(scalar1(num(1)), gl1).g01->is_identity());
    CHECK(*h1G_decompose(scalar1(num(-1)), gl1).g01 == scalar1(imag()));

    auto sl2 = Ambient::special_linear(AntiRegularMap::conjugation(q4(), 2));
    const CMatrix minus = CMatrix::identity(q4(), 2).scaled(Rational(-1));
    auto r = h1G_decompose(minus, sl2);
    REQUIRE(r.trivial());
    const CMatrix& g = *r.g01;
    CHECK(g.conj() == g.scaled(Rational(-1)));
    CHECK(g.determinant().is_one());
    CHECK(g.inverse() * g.conj() == minus);

    auto circle = compact_circle().ambient;
    auto c = h1G_decompose(scalar1(num(-1)), circle);
    CHECK_FALSE(c.trivial());
    CHECK(c.class_index == 1);

    CHECK_THROWS_AS(h1G_decompose(scalar1(num(-1)), Ambient::general_linear(compact(1))), UnsupportedError);
}

TEST_CASE("end-to-end verdicts and certificates") {
    auto mu2 = mu2_in_gl1();
    auto run = solve(mu2);
    REQUIRE(run.certificate.verdict == Verdict::RealPoint);
    CHECK(*run.certificate.g01 == scalar1(imag()));
    CHECK(verify_certificate(run.certificate, mu2).ok);

    auto tampered = run.certificate;
    tampered.g01 = tampered.g01->scaled(Rational(-1));
    CHECK_FALSE(verify_certificate(tampered, mu2).ok);
    tampered = run.certificate;
    tampered.h_j = tampered.h_j->scaled(Rational(-1));
    CHECK_FALSE(verify_certificate(tampered, mu2).ok);
    tampered = run.certificate;
    tampered.verdict = Verdict::NoRealPoint;
    CHECK_FALSE(verify_certificate(tampered, mu2).ok);

    auto circle = compact_circle();
    auto none = solve(circle);
    CHECK(none.certificate.verdict == Verdict::NoRealPoint);
    CHECK(none.certificate.obstruction == "H¹ class nontrivial");
    CHECK(verify_certificate(none.certificate, circle).ok);

    auto sl2 = problem(Ambient::special_linear(AntiRegularMap::conjugation(q4(), 2)), StabilizerSpec::trivial(q4(), 2),
                       CMatrix::identity(q4(), 2).scaled(Rational(-1)));
    auto s = solve(sl2);
    REQUIRE(s.certificate.verdict == Verdict::RealPoint);
    CHECK(verify_certificate(s.certificate, sl2).ok);
}

TEST_CASE("reductive stabilizer with a pinning hint") {
    auto whole = StabilizerSpec::trivial(q4(), 2);
    whole.reductive = ReductivePart::named("SL", q4(), 2);
    const CMatrix j = CMatrix::from_rationals(q4(), {{0, 1}, {-1, 0}});
    auto p = problem(Ambient::special_linear(AntiRegularMap::conjugation(q4(), 2)), whole, j);
    CHECK_THROWS_AS(solve(p), UnsupportedError);
    p.stabilizer.reductive->pinning_hint = j.inverse();
    auto run = solve(p);
    REQUIRE(run.certificate.verdict == Verdict::RealPoint);
    CHECK(verify_certificate(run.certificate, p).ok);
}

TEST_CASE("real orbit enumeration") {
    auto trivial = problem(Ambient::general_linear(AntiRegularMap::conjugation(q4(), 1)), StabilizerSpec::trivial(q4(), 1),
                           scalar1(num(1)));
    CHECK(enumerate_real_orbits(solve(trivial).certificate, trivial).size() == 1);
    auto mu2 = mu2_in_gl1();
    CHECK(enumerate_real_orbits(solve(mu2).certificate, mu2).size() == 2);
    auto circle = circle_stabilizer();
    CHECK(enumerate_real_orbits(solve(circle).certificate, circle).size() == 2);
}
