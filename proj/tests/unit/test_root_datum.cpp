#include <doctest.h>

#include "oracles.hpp"
#include "realpt/errors.hpp"
#include "realpt/root_datum.hpp"

using namespace realpt;

namespace {

std::vector<std::string> rank_le_4_types() {
    return {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"};
}

}  // namespace

TEST_CASE("root system sizes match the classification") {
    const std::vector<std::pair<std::string, std::size_t>> table = {
        {"A1", 2},  {"A2", 6},  {"A3", 12},  {"A4", 20},  {"B2", 8},   {"B3", 18},  {"C3", 18},
        {"D4", 24}, {"D5", 40}, {"E6", 72},  {"E7", 126}, {"E8", 240}, {"F4", 48},  {"G2", 12}, {"A1xA1", 4}};
    for (const auto& [name, count] : table) {
        CAPTURE(name);
        CHECK(root_system(cartan_matrix(name)).size() == count);
    }
}

TEST_CASE("cartan conventions") {
    // <alpha_i, alpha_j^v>: B2 has alpha_2 short, so <alpha_1, alpha_2^v> = -2.
    CHECK(cartan_matrix("B2") == IntMatrix{{2, -2}, {-1, 2}});
    CHECK(cartan_matrix("C2") == IntMatrix{{2, -1}, {-2, 2}});
    CHECK(cartan_matrix("G2") == IntMatrix{{2, -1}, {-3, 2}});
    CHECK(cartan_matrix("A1xA1") == IntMatrix{{2, 0}, {0, 2}});
    CHECK_THROWS_AS(cartan_matrix("Q3"), ValidationError);
    CHECK_THROWS_AS(cartan_matrix("E9"), ValidationError);
    CHECK_THROWS_AS(validate_cartan(IntMatrix{{2, -2}, {-2, 2}}), ValidationError);
    CHECK_THROWS_AS(validate_cartan(IntMatrix{{2, -1, 0}, {-1, 2, -1}, {-1, -1, 2}}), ValidationError);
}

TEST_CASE("cartan determinants give the center orders") {
    const std::vector<std::pair<std::string, long>> table = {{"A1", 2}, {"A2", 3}, {"A3", 4}, {"A4", 5}, {"B3", 2},
                                                             {"C4", 2}, {"D4", 4}, {"D5", 4}, {"E6", 3}, {"E7", 2},
                                                             {"E8", 1}, {"F4", 1}, {"G2", 1}};
    for (const auto& [name, det] : table) {
        CAPTURE(name);
        IntMatrix c = cartan_matrix(name);
        CHECK(c.determinant() == det);
        auto datum = BasedRootDatum::simply_connected(c);
        auto center = center_module(datum, IntMatrix::identity(c.rows()));
        Integer order = 1;
        for (const auto& d : smith_normal_form(center.relations()).diagonal()) order *= d;
        CHECK(order == det);
        auto cover = csc_and_rho(datum, IntMatrix::identity(c.rows()));
        CHECK(cover.rho.is_identity());
    }
}

TEST_CASE("center module examples") {
    auto a1 = center_module(BasedRootDatum::simply_connected(cartan_matrix("A1")), IntMatrix{{1}});
    CHECK(smith_normal_form(a1.relations()).diagonal() == std::vector<Integer>{2});
    auto a2 = center_module(BasedRootDatum::simply_connected(cartan_matrix("A2")), IntMatrix::identity(2));
    CHECK(smith_normal_form(a2.relations()).diagonal() == std::vector<Integer>{1, 3});
    auto t = center_module(BasedRootDatum::torus(1), IntMatrix{{1}});
    CHECK(t.relations().cols() == 0);
    auto adj = center_module(BasedRootDatum::adjoint(cartan_matrix("A2")), IntMatrix::identity(2));
    CHECK(smith_normal_form(adj.relations()).diagonal() == std::vector<Integer>{1, 1});
    auto bad = IntMatrix{{1, 1}, {0, 1}};
    CHECK_THROWS_AS(center_module(BasedRootDatum::simply_connected(cartan_matrix("A2")), bad), ValidationError);
}

TEST_CASE("rho from the simply connected cover of GL2-like data") {
    // X = Z^2 with root e1 - e2 and coroot e1^v - e2^v (GL2): C = X / <R> = Z.
    BasedRootDatum gl2(IntMatrix{{1}, {-1}}, IntMatrix{{1}, {-1}});
    auto cover = csc_and_rho(gl2, IntMatrix::identity(2));
    CHECK(cover.rho == IntMatrix{{1}, {-1}});
    // -1 in C^sc = mu_2 maps to diag(-1, -1), the point with both coordinates -1.
    auto img = push_point(cover.rho, QuasiTorusPoint::from_angles({frac(1, 2)}));
    CHECK(img == QuasiTorusPoint::from_angles({frac(1, 2), frac(1, 2)}));
    auto torus = csc_and_rho(BasedRootDatum::torus(2), IntMatrix::identity(2));
    CHECK(torus.csc.rank() == 0);
    CHECK(tate_h0(torus.csc).order == 1);
}

TEST_CASE("diagram involutions") {
    CHECK(diagram_involutions(cartan_matrix("A1")).size() == 1);
    CHECK(diagram_involutions(cartan_matrix("A2")).size() == 2);
    CHECK(diagram_involutions(cartan_matrix("A4")).size() == 2);
    CHECK(diagram_involutions(cartan_matrix("B3")).size() == 1);
    CHECK(diagram_involutions(cartan_matrix("D4")).size() == 4);
    CHECK(diagram_involutions(cartan_matrix("E6")).size() == 2);
    CHECK(diagram_involutions(cartan_matrix("A1xA1")).size() == 2);
    CHECK_THROWS_AS(DiagramInvolution({1, 0}, cartan_matrix("B2")), ValidationError);
}

TEST_CASE("fundamental torus decomposition examples") {
    auto a1 = fundamental_torus_decomposition(cartan_matrix("A1"), DiagramInvolution::identity(1));
    CHECK(a1.m == 1);
    CHECK(a1.n == 0);
    CHECK(a1.block == IntMatrix{{-1}});
    auto a2c = cartan_matrix("A2");
    auto a2 = fundamental_torus_decomposition(a2c, DiagramInvolution({1, 0}, a2c));
    CHECK(a2.m == 0);
    CHECK(a2.n == 1);
    CHECK(a2.block == IntMatrix{{0, 1}, {1, 0}});
    auto pc = cartan_matrix("A1xA1");
    auto p = fundamental_torus_decomposition(pc, DiagramInvolution({1, 0}, pc));
    CHECK(p.m == 0);
    CHECK(p.n == 1);
    BasedRootDatum gl2(IntMatrix{{1}, {-1}}, IntMatrix{{1}, {-1}});
    CHECK_THROWS_AS(fundamental_torus_decomposition(gl2, DiagramInvolution::identity(1)), UnsupportedError);
}

TEST_CASE("decomposition for every type of rank at most four") {
    for (const auto& name : rank_le_4_types()) {
        IntMatrix c = cartan_matrix(name);
        auto datum = BasedRootDatum::simply_connected(c);
        for (const auto& nu : diagram_involutions(c)) {
            CAPTURE(name);
            auto d = fundamental_torus_decomposition(datum, nu);
            CHECK(abs(d.basis_change.determinant()) == 1);
            CHECK(d.m + 2 * d.n == c.rows());
            CHECK(d.basis_change * d.block == d.twisted * d.basis_change);
            CHECK(verify_r_perp(datum, nu).ok);
            CHECK(verify_r_perp(datum, nu).witnessed == datum.roots().size());
            auto M = fundamental_torus_module(d);
            for (const auto& z : testing::center_points(c)) {
                if (gamma_act(M, z) != z) continue;
                auto s = sqrt_in_torus(z, d);
                CHECK(s * s == z);
                CHECK(gamma_act(M, s) == s);
            }
        }
    }
}

TEST_CASE("r-perp detects a fabricated root") {
    auto c = cartan_matrix("A2");
    DiagramInvolution flip({1, 0}, c);
    auto ok = verify_r_perp(BasedRootDatum::simply_connected(c), flip);
    CHECK(ok.ok);
    CHECK(ok.witnessed == 6);
    CHECK(verify_r_perp(BasedRootDatum::simply_connected(cartan_matrix("A1")), DiagramInvolution::identity(1)).ok);
    auto bad = verify_r_perp({{Integer(1), Integer(0)}, {Integer(1), Integer(-1)}}, flip);
    CHECK_FALSE(bad.ok);
    CHECK(bad.violating_root == IntVector{1, -1});
}

TEST_CASE("square roots in fundamental tori") {
    auto a1 = fundamental_torus_decomposition(cartan_matrix("A1"), DiagramInvolution::identity(1));
    CHECK(sqrt_in_torus(QuasiTorusPoint::from_angles({frac(1, 2)}), a1) == QuasiTorusPoint::from_angles({frac(1, 4)}));
    CHECK(sqrt_in_torus(QuasiTorusPoint::identity(1), a1).is_identity());
    auto c = cartan_matrix("A2");
    auto a2 = fundamental_torus_decomposition(c, DiagramInvolution({1, 0}, c));
    // adapted coordinates (4, 4) are simple-coroot coordinates (4, 1/4)
    QuasiTorusPoint t{{Polar::from_rational(Rational(4)), Polar::from_rational(frac(1, 4))}};
    QuasiTorusPoint s{{Polar::from_rational(Rational(2)), Polar::from_rational(frac(1, 2))}};
    CHECK(to_adapted(t, a2) == QuasiTorusPoint{{Polar::from_rational(Rational(4)), Polar::from_rational(Rational(4))}});
    CHECK(sqrt_in_torus(t, a2) == s);
    CHECK_THROWS_AS(sqrt_in_torus(QuasiTorusPoint{{Polar::from_rational(Rational(4))}}, a1), PreconditionError);
}
