#include <doctest.h>

#include "realpt/errors.hpp"
#include "realpt/involution.hpp"
#include "realpt/matrix.hpp"

using namespace realpt;

namespace {

CycloNumber q(const FieldPtr& F, long a, long b = 1) { return CycloNumber(F, frac(a, b)); }

}  // namespace

TEST_CASE("determinant and inverse over Q(i)") {
    auto F = CycloField::make(4);
    auto i = CycloNumber::zeta(F, 1);
    CMatrix a(F, 2);
    a(0, 0) = q(F, 1);
    a(0, 1) = i;
    a(1, 0) = i;
    a(1, 1) = q(F, 1);
    // det [[1, i], [i, 1]] = 1 - i^2 = 2
    CHECK(a.determinant() == q(F, 2));
    CHECK((a * a.inverse()).is_identity());
    CHECK((a.inverse() * a).is_identity());
    CMatrix s = CMatrix::from_rationals(F, {{1, 2}, {2, 4}});
    CHECK(s.determinant().is_zero());
    CHECK_THROWS_AS(s.inverse(), DomainError);
}

TEST_CASE("bareiss determinant agrees with cofactor expansion") {
    auto F = CycloField::make(6);
    auto w = CycloNumber::zeta(F, 1);
    CMatrix a(F, 3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) a(r, c) = w.pow(static_cast<std::int64_t>(r * c + r)) + q(F, static_cast<long>(c));
    auto cof = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    CHECK(a.determinant() == cof);
}

TEST_CASE("exp and log are inverse on unipotents") {
    auto F = CycloField::make(4);
    auto i = CycloNumber::zeta(F, 1);
    CMatrix n(F, 3);
    n(0, 1) = i;
    n(0, 2) = q(F, 3, 2);
    n(1, 2) = q(F, -2);
    CMatrix u = exp_nilpotent(n);
    CHECK(u.is_unipotent());
    CHECK(log_unipotent(u) == n);
    CHECK_THROWS_AS(exp_nilpotent(CMatrix::identity(F, 2)), PreconditionError);
    CHECK_THROWS_AS(log_unipotent(CMatrix::identity(F, 2).scaled(frac(2, 1))), PreconditionError);
}

TEST_CASE("conjugation is an involution on GL2") {
    auto F = CycloField::make(4);
    auto i = CycloNumber::zeta(F, 1);
    std::vector<CMatrix> gens = {CMatrix::elementary(F, 2, 0, 1, i), CMatrix::elementary(F, 2, 1, 0, q(F, 1)),
                                 CMatrix::diagonal({i, q(F, 2)})};
    auto tau = AntiRegularMap::conjugation(F, 2);
    CHECK(verify_involution(tau, gens).ok);
    CMatrix w = CMatrix::from_rationals(F, {{0, 1}, {-1, 0}});
    AntiRegularMap compact(InvolutionMode::ConjugationTransposeInverseInner, CMatrix::identity(F, 2));
    CHECK(verify_involution(compact, gens).ok);
    AntiRegularMap quaternionic(InvolutionMode::ConjugationInner, w);
    CHECK(quaternionic.square_inner() == CMatrix::identity(F, 2).scaled(frac(-1, 1)));
    CHECK(verify_involution(quaternionic, gens).ok);
}

TEST_CASE("inner twist with u conj(u) non-central fails") {
    auto F = CycloField::make(4);
    auto i = CycloNumber::zeta(F, 1);
    CMatrix u(F, 2);
    u(0, 0) = q(F, 1);
    u(0, 1) = q(F, 1);
    u(1, 1) = i;
    AntiRegularMap tau(InvolutionMode::ConjugationInner, u);
    std::vector<CMatrix> gens = {CMatrix::elementary(F, 2, 0, 1, q(F, 1)), CMatrix::elementary(F, 2, 1, 0, q(F, 1))};
    auto v = verify_involution(tau, gens);
    CHECK_FALSE(v.ok);
    CHECK(v.failure == "tau^2 != id");
    CHECK(v.witness.size() > 0);
}

TEST_CASE("sampled words are deterministic") {
    auto a = sample_words(3, 32, kDefaultSeed);
    auto b = sample_words(3, 32, kDefaultSeed);
    CHECK(a == b);
    for (const auto& w : a) {
        CHECK(w.size() >= 1);
        CHECK(w.size() <= 6);
    }
}
