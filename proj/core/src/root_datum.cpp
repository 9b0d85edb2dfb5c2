#include "realpt/root_datum.hpp"

#include "realpt/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace realpt {

namespace {

// Root systems beyond this size are not of finite type for the ranks we accept.
constexpr std::size_t kMaxRoots = 2000;

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    IntMatrix m(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return m;
}

// Cartan matrix from a Gram matrix of the simple roots: C_ij = 2 (a_i, a_j) / (a_j, a_j).
IntMatrix from_gram(const std::vector<std::vector<long>>& g) {
    const std::size_t n = g.size();
    IntMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = 2 * g[i][j] / g[j][j];
    return c;
}

IntMatrix irreducible(char type, long n) {
    auto bad = [&] { throw ValidationError(std::string("unknown Dynkin type ") + type + std::to_string(n)); };
    if (n < 1) bad();
    std::vector<std::vector<long>> g(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    auto link = [&](long i, long j, long v) { g[i][j] = g[j][i] = v; };
    switch (type) {
        case 'A':
            for (long i = 0; i < n; ++i) g[i][i] = 2;
            for (long i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
            break;
        case 'B':
            if (n < 2) bad();
            for (long i = 0; i < n; ++i) g[i][i] = 4;
            g[n - 1][n - 1] = 2;
            for (long i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
            break;
        case 'C':
            if (n < 2) bad();
            for (long i = 0; i < n; ++i) g[i][i] = 2;
            g[n - 1][n - 1] = 4;
            for (long i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
            link(n - 2, n - 1, -2);
            break;
        case 'D':
            if (n < 4) bad();
            for (long i = 0; i < n; ++i) g[i][i] = 2;
            for (long i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
            link(n - 3, n - 1, -1);
            break;
        case 'E':
            if (n < 6 || n > 8) bad();
            for (long i = 0; i < n; ++i) g[i][i] = 2;
            link(0, 2, -1);
            link(1, 3, -1);
            for (long i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
            break;
        case 'F':
            if (n != 4) bad();
            g[0][0] = g[1][1] = 4;
            g[2][2] = g[3][3] = 2;
            link(0, 1, -2);
            link(1, 2, -2);
            link(2, 3, -1);
            break;
        case 'G':
            if (n != 2) bad();
            g[0][0] = 2;
            g[1][1] = 6;
            link(0, 1, -3);
            break;
        default:
            bad();
    }
    return from_gram(g);
}

Integer pair(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

// Roots and coroots in simple coordinates, generated by the simple reflections.
std::pair<std::vector<IntVector>, std::vector<IntVector>> root_pairs(const IntMatrix& c) {
    const std::size_t s = c.rows();
    std::vector<IntVector> roots, coroots;
    std::map<IntVector, std::size_t> index;
    for (std::size_t i = 0; i < s; ++i) {
        IntVector e(s, 0);
        e[i] = 1;
        index[e] = roots.size();
        roots.push_back(e);
        coroots.push_back(e);
    }
    for (std::size_t head = 0; head < roots.size(); ++head) {
        for (std::size_t i = 0; i < s; ++i) {
            // s_i(b) = b - <b, a_i^v> a_i, s_i(b^v) = b^v - <a_i, b^v> a_i^v
            IntVector b = roots[head], bv = coroots[head];
            Integer p = 0, q = 0;
            for (std::size_t k = 0; k < s; ++k) {
                p += b[k] * c(k, i);
                q += c(i, k) * bv[k];
            }
            b[i] -= p;
            bv[i] -= q;
            if (index.count(b)) continue;
            index[b] = roots.size();
            roots.push_back(b);
            coroots.push_back(bv);
            if (roots.size() > kMaxRoots) throw ValidationError("Cartan matrix is not of finite type");
        }
    }
    return {roots, coroots};
}

IntVector column_combination(const IntMatrix& m, const IntVector& coeffs) { return m.apply(coeffs); }

}  // namespace

IntMatrix cartan_matrix(const std::string& name) {
    std::vector<IntMatrix> blocks;
    std::size_t start = 0;
    while (start <= name.size()) {
        std::size_t end = name.find_first_of("x*", start);
        if (end == std::string::npos) end = name.size();
        std::string tok = name.substr(start, end - start);
        if (tok.size() < 2) throw ValidationError("malformed Dynkin type '" + name + "'");
        char type = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
        std::size_t used = 0;
        long n = 0;
        try {
            n = std::stol(tok.substr(1), &used);
        } catch (const std::exception&) {
            throw ValidationError("malformed Dynkin type '" + name + "'");
        }
        if (used != tok.size() - 1) throw ValidationError("malformed Dynkin type '" + name + "'");
        blocks.push_back(irreducible(type, n));
        start = end + 1;
    }
    return block_diagonal(blocks);
}

void validate_cartan(const IntMatrix& c) {
    if (c.rows() != c.cols()) throw ValidationError("Cartan matrix must be square");
    for (std::size_t i = 0; i < c.rows(); ++i) {
        if (c(i, i) != 2) throw ValidationError("Cartan matrix diagonal must be 2");
        for (std::size_t j = 0; j < c.cols(); ++j) {
            if (i == j) continue;
            if (c(i, j) > 0) throw ValidationError("Cartan matrix off-diagonal entries must be <= 0");
            if ((c(i, j) == 0) != (c(j, i) == 0)) throw ValidationError("Cartan matrix zero pattern is not symmetric");
            if (c(i, j) * c(j, i) > 3) throw ValidationError("Cartan matrix is not of finite type");
        }
    }
    root_pairs(c);
}

std::vector<IntVector> root_system(const IntMatrix& cartan) {
    validate_cartan(cartan);
    return root_pairs(cartan).first;
}

BasedRootDatum::BasedRootDatum(IntMatrix simple_roots, IntMatrix simple_coroots)
    : simple_roots_(std::move(simple_roots)), simple_coroots_(std::move(simple_coroots)) {
    if (simple_roots_.rows() != simple_coroots_.rows() || simple_roots_.cols() != simple_coroots_.cols())
        throw ValidationError("simple roots and coroots must have the same shape");
    cartan_ = simple_roots_.transpose() * simple_coroots_;
    validate_cartan(cartan_);
    auto [rc, cc] = root_pairs(cartan_);
    root_coeffs_ = rc;
    for (std::size_t k = 0; k < rc.size(); ++k) {
        roots_.push_back(column_combination(simple_roots_, rc[k]));
        coroots_.push_back(column_combination(simple_coroots_, cc[k]));
    }
}

BasedRootDatum BasedRootDatum::simply_connected(const IntMatrix& cartan) {
    validate_cartan(cartan);
    return BasedRootDatum(cartan.transpose(), IntMatrix::identity(cartan.rows()));
}

BasedRootDatum BasedRootDatum::adjoint(const IntMatrix& cartan) {
    validate_cartan(cartan);
    return BasedRootDatum(IntMatrix::identity(cartan.rows()), cartan);
}

BasedRootDatum BasedRootDatum::torus(std::size_t rank) { return BasedRootDatum(IntMatrix(rank, 0), IntMatrix(rank, 0)); }

bool BasedRootDatum::is_simply_connected() const {
    return rank() == semisimple_rank() && abs(simple_coroots_.determinant()) == 1;
}

DiagramInvolution::DiagramInvolution(std::vector<std::size_t> perm, const IntMatrix& cartan) : perm_(std::move(perm)) {
    const std::size_t n = perm_.size();
    if (cartan.rows() != n) throw ValidationError("diagram involution size does not match the Cartan matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (perm_[i] >= n || perm_[perm_[i]] != i) throw ValidationError("diagram permutation is not an involution");
        for (std::size_t j = 0; j < n; ++j)
            if (cartan(perm_[i], perm_[j]) != cartan(i, j))
                throw ValidationError("diagram permutation does not preserve the Cartan matrix");
    }
}

DiagramInvolution DiagramInvolution::identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    DiagramInvolution d;
    d.perm_ = std::move(p);
    return d;
}

IntMatrix DiagramInvolution::matrix() const {
    IntMatrix m(perm_.size(), perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) m(perm_[i], i) = 1;
    return m;
}

std::vector<DiagramInvolution> diagram_involutions(const IntMatrix& cartan) {
    validate_cartan(cartan);
    const std::size_t n = cartan.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<DiagramInvolution> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (p[p[i]] != i) ok = false;
            for (std::size_t j = 0; j < n && ok; ++j)
                if (cartan(p[i], p[j]) != cartan(i, j)) ok = false;
        }
        if (ok) out.emplace_back(p, cartan);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

FundamentalTorusDecomposition fundamental_torus_decomposition(const IntMatrix& cartan, const DiagramInvolution& nu) {
    validate_cartan(cartan);
    const std::size_t s = cartan.rows();
    DiagramInvolution checked(nu.permutation(), cartan);
    FundamentalTorusDecomposition d;
    for (std::size_t i = 0; i < s; ++i) {
        if (nu(i) == i)
            d.fixed.push_back(i);
        else if (i < nu(i))
            d.pairs.emplace_back(i, nu(i));
    }
    d.m = d.fixed.size();
    d.n = d.pairs.size();
    d.twisted = -nu.matrix();
    d.basis_change = IntMatrix(s, s);
    IntMatrix expected(s, s);
    std::size_t col = 0;
    for (std::size_t i : d.fixed) {
        d.basis_change(i, col) = 1;
        expected(col, col) = -1;
        ++col;
    }
    for (const auto& [b, bp] : d.pairs) {
        d.basis_change(b, col) = 1;
        d.basis_change(bp, col + 1) = -1;
        expected(col, col + 1) = 1;
        expected(col + 1, col) = 1;
        col += 2;
    }
    if (d.m + 2 * d.n != s) throw Error("internal: fundamental torus factors do not fill the rank");
    if (abs(d.basis_change.determinant()) != 1) throw Error("internal: adapted basis is not unimodular");
    d.block = d.basis_change.inverse_unimodular() * d.twisted * d.basis_change;
    if (d.block != expected) throw Error("internal: adapted basis does not give the block form");
    return d;
}

FundamentalTorusDecomposition fundamental_torus_decomposition(const BasedRootDatum& datum, const DiagramInvolution& nu) {
    if (!datum.is_simply_connected())
        throw UnsupportedError("fundamental torus decomposition needs a simply connected datum");
    // Coordinates are taken on the simple-coroot basis, which is a basis of X^v here.
    return fundamental_torus_decomposition(datum.cartan(), nu);
}

GammaModule fundamental_torus_module(const FundamentalTorusDecomposition& d) {
    return GammaModule::free(d.twisted.transpose());
}

RPerpVerdict verify_r_perp(const std::vector<IntVector>& roots, const DiagramInvolution& nu) {
    RPerpVerdict v;
    const std::size_t s = nu.size();
    for (const auto& r : roots) {
        if (r.size() != s) throw DomainError("verify_r_perp: root has the wrong length");
        bool seen = false;
        for (std::size_t i = 0; i < s && !seen; ++i) {
            if (nu(i) < i) continue;
            Integer p = nu(i) == i ? r[i] : r[i] + r[nu(i)];
            if (p != 0) seen = true;
        }
        if (!seen) {
            v.ok = false;
            v.violating_root = r;
            return v;
        }
        ++v.witnessed;
    }
    return v;
}

RPerpVerdict verify_r_perp(const BasedRootDatum& datum, const DiagramInvolution& nu) {
    if (!datum.is_simply_connected()) throw UnsupportedError("verify_r_perp needs a simply connected datum");
    return verify_r_perp(datum.roots_in_simple_basis(), nu);
}

QuasiTorusPoint push_point(const IntMatrix& m, const QuasiTorusPoint& p) {
    if (m.cols() != p.size()) throw DomainError("push_point: rank mismatch");
    QuasiTorusPoint r;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Polar v;
        for (std::size_t k = 0; k < m.cols(); ++k)
            if (m(i, k) != 0) v = v * p.coords[k].pow(m(i, k));
        r.coords.push_back(v);
    }
    return r;
}

QuasiTorusPoint to_adapted(const QuasiTorusPoint& t, const FundamentalTorusDecomposition& d) {
    return push_point(d.basis_change.inverse_unimodular(), t);
}

QuasiTorusPoint from_adapted(const QuasiTorusPoint& t, const FundamentalTorusDecomposition& d) {
    return push_point(d.basis_change, t);
}

QuasiTorusPoint sqrt_in_torus(const QuasiTorusPoint& t, const FundamentalTorusDecomposition& d) {
    QuasiTorusPoint u = to_adapted(t, d);
    QuasiTorusPoint s = u;
    std::size_t k = 0;
    for (; k < d.m; ++k) {
        if (!u.coords[k].modulus.is_one()) throw PreconditionError("point is not real: U(1) coordinate off the unit circle");
        s.coords[k] = u.coords[k].sqrt();
    }
    for (std::size_t j = 0; j < d.n; ++j, k += 2) {
        if (u.coords[k + 1] != u.coords[k].conj())
            throw PreconditionError("point is not real: C^x pair coordinates are not conjugate");
        s.coords[k] = u.coords[k].sqrt();
        s.coords[k + 1] = s.coords[k].conj();
    }
    QuasiTorusPoint out = from_adapted(s, d);
    if (out * out != t) throw Error("internal: square root in the fundamental torus failed");
    return out;
}

namespace {

void check_preserves_roots(const BasedRootDatum& datum, const IntMatrix& sigma) {
    if (sigma.rows() != datum.rank() || sigma.cols() != datum.rank())
        throw ValidationError("involution on X has the wrong size");
    std::set<IntVector> roots(datum.roots().begin(), datum.roots().end());
    for (const auto& r : datum.roots())
        if (!roots.count(sigma.apply(r))) throw ValidationError("involution does not preserve the root system");
}

}  // namespace

GammaModule center_module(const BasedRootDatum& datum, const IntMatrix& sigma) {
    check_preserves_roots(datum, sigma);
    return GammaModule(datum.simple_roots(), sigma);
}

CenterCover csc_and_rho(const BasedRootDatum& datum, const IntMatrix& sigma) {
    check_preserves_roots(datum, sigma);
    const IntMatrix& av = datum.simple_coroots();
    // sigma on X induces sigma^T on X^v; restricted to the coroot lattice it has matrix s_v.
    auto sv = solve_integer(av, sigma.transpose() * av);
    if (!sv) throw ValidationError("involution does not preserve the coroot lattice");
    CenterCover cover{GammaModule(datum.cartan().transpose(), sv->transpose()), av};
    // rho^* sigma = sigma^sc rho^* as maps X -> P modulo the root lattice.
    IntMatrix lhs = av.transpose() * sigma, rhs = sv->transpose() * av.transpose();
    IntMatrix diff = lhs - rhs;
    if (!diff.is_zero() && !solve_integer(datum.cartan().transpose(), diff))
        throw Error("internal: rho does not commute with the Gamma-actions");
    return cover;
}

}  // namespace realpt
