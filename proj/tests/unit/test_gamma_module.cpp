#include <doctest.h>

#include "realpt/errors.hpp"
#include "oracles.hpp"
#include "realpt/gamma_module.hpp"

#include <random>

using namespace realpt;

namespace {

GammaModule split() { return GammaModule::free(IntMatrix{{1}}); }
GammaModule compact() { return GammaModule::free(IntMatrix{{-1}}); }
GammaModule weil() { return GammaModule::free(IntMatrix{{0, 1}, {1, 0}}); }

QuasiTorusPoint rat(std::initializer_list<long> v) {
    QuasiTorusPoint p;
    for (long x : v) p.coords.push_back(Polar::from_rational(Rational(x)));
    return p;
}

// Z[Gamma]-lattice Z_+^p + Z_-^q + Z[Gamma]^s: |H^0| = 2^p, |H^-1| = 2^q.
// s = rank - dim_F2 (M/2M)^sigma, p = rank ker(1 - sigma) - s, q = rank ker(1 + sigma) - s.
std::pair<long, long> lattice_oracle(const IntMatrix& sigma) {
    const std::size_t a = sigma.rows();
    long fixed_f2 = 0;
    for (unsigned long mask = 0; mask < (1UL << a); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < a && ok; ++i) {
            long s = 0;
            for (std::size_t j = 0; j < a; ++j) s += sigma(i, j).get_si() * static_cast<long>((mask >> j) & 1);
            if (((s - static_cast<long>((mask >> i) & 1)) % 2 + 2) % 2) ok = false;
        }
        fixed_f2 += ok;
    }
    long dim = 0;
    while ((1L << dim) < fixed_f2) ++dim;
    auto kernel_rank = [&](int sign) {
        IntMatrix m = IntMatrix::identity(a) - (sign > 0 ? sigma : -sigma);
        return static_cast<long>(integer_kernel(m).cols());
    };
    long s = static_cast<long>(a) - dim;
    return {kernel_rank(+1) - s, kernel_rank(-1) - s};
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    for (int k = 0; k < 6; ++k) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        IntMatrix e = IntMatrix::identity(n);
        e(i, j) = static_cast<long>(rng() % 5) - 2;
        u = u * e;
    }
    return u;
}

IntMatrix random_involution(std::mt19937_64& rng, std::size_t n) {
    IntMatrix d(n, n);
    std::size_t i = 0;
    while (i < n) {
        int kind = static_cast<int>(rng() % 3);
        if (kind == 2 && i + 1 < n) {
            d(i, i + 1) = 1;
            d(i + 1, i) = 1;
            i += 2;
        } else {
            d(i, i) = kind == 0 ? 1 : -1;
            ++i;
        }
    }
    IntMatrix u = random_unimodular(rng, n);
    return u * d * u.inverse_unimodular();
}

}  // namespace

TEST_CASE("smith examples") {
    CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).diagonal() == std::vector<Integer>{1, 6});
    CHECK(smith_normal_form(IntMatrix{{2, -1}, {-1, 2}}).diagonal() == std::vector<Integer>{1, 3});
    auto z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.D.is_zero());
    CHECK(z.U.is_identity());
    CHECK(z.V.is_identity());
}

TEST_CASE("basic tori table") {
    auto a = tate_h0(split()), b = tate_h0(weil()), c = tate_h0(compact());
    CHECK(a.order == 2);
    CHECK(b.order == 1);
    CHECK(c.order == 1);
    CHECK(a.representatives.size() == 2);
    CHECK(a.representatives[0].is_identity());
    CHECK(a.representatives[1] == rat({-1}));
    CHECK(tate_hminus1(split()).order == 1);
    CHECK(tate_hminus1(weil()).order == 1);
    auto h1c = tate_hminus1(compact());
    CHECK(h1c.order == 2);
    CHECK(h1c.divisors == std::vector<Integer>{2});
    CHECK(h1c.representatives[1] == rat({-1}));
}

TEST_CASE("duality smoke check") {
    CHECK(tate_h0(split()).divisors == tate_hminus1(compact()).divisors);
}

TEST_CASE("tate groups of lattices agree with the classification oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + rng() % 4;
        IntMatrix s = random_involution(rng, n);
        auto [p, q] = lattice_oracle(s);
        GammaModule M = GammaModule::free(s);
        auto h0 = tate_h0(M);
        auto h1 = tate_hminus1(M);
        CHECK(h0.order == Integer(1) << p);
        CHECK(h1.order == Integer(1) << q);
        for (const auto& r : h0.representatives) CHECK(gamma_act(M, r) == r);
        for (const auto& r : h1.representatives) CHECK((r * gamma_act(M, r)).is_identity());
    }
}

TEST_CASE("tate groups of finite modules agree with brute force") {
    const std::vector<std::pair<IntMatrix, IntMatrix>> cases = {
        {IntMatrix{{2}}, IntMatrix{{1}}},
        {IntMatrix{{4}}, IntMatrix{{1}}},
        {IntMatrix{{4}}, IntMatrix{{-1}}},
        {IntMatrix{{3}}, IntMatrix{{-1}}},
        {IntMatrix{{6}}, IntMatrix{{-1}}},
        {IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{0, 1}, {1, 0}}},
        {IntMatrix{{2, -1}, {-1, 2}}, IntMatrix{{0, 1}, {1, 0}}},
        {IntMatrix{{2, -1}, {-1, 2}}, IntMatrix{{-1, 0}, {0, -1}}},
        {IntMatrix{{4, 0}, {0, 2}}, IntMatrix{{1, 0}, {0, -1}}},
    };
    for (const auto& [b, s] : cases) {
        GammaModule M(b, s);
        auto [h0, h1] = testing::brute_tate(M, M.torsion_exponent().get_si());
        CHECK(tate_h0(M).order == Integer(h0));
        CHECK(tate_hminus1(M).order == Integer(h1));
    }
}

TEST_CASE("h2 decomposition examples") {
    auto d = h2_decompose(rat({4}), split());
    CHECK(d.trivial());
    CHECK(d.witness == rat({2}));
    auto n = h2_decompose(rat({-4}), split());
    CHECK(n.index == 1);
    CHECK(n.representative == rat({-1}));
    CHECK(n.witness == rat({2}));
    auto one = h2_decompose(QuasiTorusPoint::identity(2), weil());
    CHECK(one.trivial());
    CHECK(one.witness.is_identity());
    auto F = CycloField::make(4);
    auto i = CycloNumber::zeta(F, 1);
    CHECK_THROWS_AS(h2_decompose(QuasiTorusPoint::from_cyclo({i}), split()), PreconditionError);
}

TEST_CASE("h1 decomposition examples") {
    auto F = CycloField::make(4);
    auto i = CycloNumber::zeta(F, 1);
    auto t = h1_decompose(rat({1}), split());
    CHECK(t.trivial());
    CHECK(t.witness.is_identity());
    auto c = h1_decompose(rat({-1}), compact());
    CHECK(c.index == 1);
    CHECK_FALSE(h1_witness(rat({-1}), QuasiTorusPoint::identity(1), compact()).has_value());
    // (i, i) is a cocycle of the Weil restriction; (i, -i) is not
    auto z = QuasiTorusPoint::from_cyclo({i, i});
    auto w = h1_decompose(z, weil());
    CHECK(w.trivial());
    CHECK(w.witness.inverse() * gamma_act(weil(), w.witness) == z);
    CHECK_THROWS_AS(h1_decompose(QuasiTorusPoint::from_cyclo({i, -i}), weil()), PreconditionError);
}

TEST_CASE("decomposition round trip on pseudorandom witnesses") {
    std::mt19937_64 rng(5);
    std::vector<GammaModule> mods = {split(), compact(), weil(), direct_sum(split(), compact()),
                                     GammaModule(IntMatrix{{2, -1}, {-1, 2}}, IntMatrix{{0, 1}, {1, 0}})};
    for (const auto& M : mods) {
        auto h0 = tate_h0(M);
        auto h1 = tate_hminus1(M);
        for (int trial = 0; trial < 10; ++trial) {
            QuasiTorusPoint b;
            for (std::size_t k = 0; k < M.rank(); ++k) {
                Rational mod(static_cast<long>(1 + rng() % 9), static_cast<long>(1 + rng() % 5));
                mod.canonicalize();
                b.coords.emplace_back(M.relations().cols() ? Modulus() : Modulus::from_rational(mod),
                                      frac(static_cast<long>(rng() % 12), 12));
            }
            if (!is_valid_point(M, b)) continue;
            for (std::size_t i = 0; i < h0.representatives.size(); ++i) {
                auto c = h0.representatives[i] * b * gamma_act(M, b);
                auto d = h2_decompose(c, M, h0);
                CHECK(d.index == i);
                CHECK(d.representative * d.witness * gamma_act(M, d.witness) == c);
            }
            for (std::size_t i = 0; i < h1.representatives.size(); ++i) {
                auto z = b.inverse() * h1.representatives[i] * gamma_act(M, b);
                auto d = h1_decompose(z, M, h1);
                CHECK(d.index == i);
                CHECK(d.witness.inverse() * d.representative * gamma_act(M, d.witness) == z);
            }
        }
    }
}

TEST_CASE("module validation") {
    CHECK_THROWS_AS(GammaModule::free(IntMatrix{{2}}), ValidationError);
    CHECK_THROWS_AS(GammaModule(IntMatrix{{2, 0}, {0, 4}}, IntMatrix{{0, 1}, {1, 0}}), ValidationError);
    CHECK_NOTHROW(GammaModule(IntMatrix{{2}}, IntMatrix{{3}}));
}
