#pragma once

// Brute-force oracles shared by unit and acceptance tests. They use only
// group arithmetic, never the cohomology routines they check.

#include "realpt/gamma_module.hpp"
#include "realpt/involution.hpp"
#include "realpt/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace realpt::testing {

/// Closure of a generating set under multiplication.
inline std::vector<CMatrix> generate(const std::vector<CMatrix>& gens) {
    std::vector<CMatrix> out = {CMatrix::identity(gens.front().field(), gens.front().dim())};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            CMatrix x = out[i] * g;
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
    return out;
}

/// Finite groups of order at most 16: cyclic, dihedral, quaternion and Klein four.
/// Each lives in the smallest cyclotomic field containing i and its entries.
inline std::vector<std::vector<CMatrix>> small_groups() {
    auto zeta = [](const FieldPtr& f, long n) { return CycloNumber::zeta(f, f->conductor() / n); };
    auto field = [](long n) { return CycloField::make(std::lcm(4L, n)); };
    auto mat2 = [](const FieldPtr& f, long a, long b, long c, long d) {
        return CMatrix::from_rationals(f, {{Rational(a), Rational(b)}, {Rational(c), Rational(d)}});
    };
    std::vector<std::vector<CMatrix>> out;
    for (long n : {1, 2, 3, 4, 6, 8, 12, 16}) {
        auto f = field(n);
        out.push_back(generate({CMatrix::diagonal({zeta(f, n)})}));
    }
    for (long n : {2, 3, 4, 6, 8}) {
        auto f = field(n);
        CycloNumber z = zeta(f, n);
        out.push_back(generate({CMatrix::diagonal({z, z.inverse()}), mat2(f, 0, 1, 1, 0)}));
    }
    auto f4 = field(4);
    out.push_back(generate({CMatrix::diagonal({zeta(f4, 4), zeta(f4, 4).inverse()}), mat2(f4, 0, 1, -1, 0)}));
    out.push_back(generate({mat2(f4, -1, 0, 0, -1), mat2(f4, 1, 0, 0, -1)}));
    return out;
}

/// Orbits of splitting elements a with a f(a) h = 1 under a -> b a f(b)^-1, by explicit search.
inline std::size_t orbit_count(const std::vector<CMatrix>& group, const AntiRegularMap& f, const CMatrix& h) {
    std::vector<CMatrix> split;
    for (const auto& a : group)
        if ((a * f(a) * h).is_identity()) split.push_back(a);
    std::vector<bool> done(split.size(), false);
    std::size_t orbits = 0;
    for (std::size_t i = 0; i < split.size(); ++i) {
        if (done[i]) continue;
        ++orbits;
        std::vector<CMatrix> stack = {split[i]};
        while (!stack.empty()) {
            CMatrix a = stack.back();
            stack.pop_back();
            auto it = std::find(split.begin(), split.end(), a);
            std::size_t k = static_cast<std::size_t>(it - split.begin());
            if (done[k]) continue;
            done[k] = true;
            for (const auto& b : group) stack.push_back(b * a * f(b.inverse()));
        }
    }
    return orbits;
}

/// Points of a module whose angles all have denominator dividing n.
inline std::vector<QuasiTorusPoint> all_points(const GammaModule& M, long n) {
    std::vector<QuasiTorusPoint> out;
    std::vector<long> d(M.rank(), 0);
    for (;;) {
        std::vector<Rational> th;
        for (long x : d) th.push_back(frac(x, n));
        auto p = QuasiTorusPoint::from_angles(th);
        if (is_valid_point(M, p)) out.push_back(p);
        std::size_t k = d.size();
        while (k > 0 && ++d[k - 1] == n) d[--k] = 0;
        if (k == 0) break;
    }
    return out;
}

/// Number of cocycle classes modulo a set of boundaries.
inline std::size_t brute_classes(const std::vector<QuasiTorusPoint>& cocycles,
                                 const std::vector<QuasiTorusPoint>& boundaries) {
    std::set<std::string> boundary_set;
    for (const auto& b : boundaries) boundary_set.insert(b.to_string());
    std::vector<QuasiTorusPoint> reps;
    for (const auto& z : cocycles) {
        bool seen = false;
        for (const auto& r : reps)
            if (boundary_set.count((z * r.inverse()).to_string())) seen = true;
        if (!seen) reps.push_back(z);
    }
    return reps.size();
}

/// Orders of (H^0, H^-1) of a finite module, by enumerating its points.
inline std::pair<std::size_t, std::size_t> brute_tate(const GammaModule& M, long n) {
    std::vector<QuasiTorusPoint> fixed, cocycles, norms, diffs;
    for (const auto& p : all_points(M, n)) {
        auto gp = gamma_act(M, p);
        if (gp == p) fixed.push_back(p);
        if ((p * gp).is_identity()) cocycles.push_back(p);
        norms.push_back(p * gp);
        diffs.push_back(p.inverse() * gp);
    }
    return {brute_classes(fixed, norms), brute_classes(cocycles, diffs)};
}

/// Central points of the simply connected torus: angle vectors theta with C theta integral.
inline std::vector<QuasiTorusPoint> center_points(const IntMatrix& c) {
    GammaModule M(c.transpose(), IntMatrix::identity(c.rows()));
    return all_points(M, Integer(abs(c.determinant())).get_si());
}

}  // namespace realpt::testing
