#include "realpt/ambient.hpp"

#include "realpt/errors.hpp"

#include <algorithm>
#include <random>

namespace realpt {

namespace {

CMatrix block(const CMatrix& x, std::size_t offset, std::size_t size) {
    CMatrix out = CMatrix::identity(x.field(), size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) out(i, j) = x(offset + i, offset + j);
    return out;
}

bool is_block_diagonal(const CMatrix& x, const std::vector<Ambient>& blocks) {
    std::size_t offset = 0;
    std::vector<std::size_t> owner(x.dim());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (std::size_t i = 0; i < blocks[b].n; ++i) owner[offset + i] = b;
        offset += blocks[b].n;
    }
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j)
            if (owner[i] != owner[j] && !x(i, j).is_zero()) return false;
    return true;
}

CMatrix embed(const CMatrix& x, std::size_t offset, std::size_t n) {
    CMatrix out = CMatrix::identity(x.field(), n);
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j) out(offset + i, offset + j) = x(i, j);
    return out;
}

std::vector<CMatrix> linear_generators(const FieldPtr& field, std::size_t n, bool special) {
    std::vector<CMatrix> out;
    const CycloNumber one(field, 1), zeta = CycloNumber::zeta(field, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                out.push_back(CMatrix::elementary(field, n, i, j, one));
                out.push_back(CMatrix::elementary(field, n, i, j, zeta));
            }
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<CycloNumber> d(n, one);
        if (special) {
            if (k + 1 == n) break;
            d[k] = CycloNumber(field, 2);
            d[k + 1] = CycloNumber(field, frac(1, 2));
            out.push_back(CMatrix::diagonal(d));
        } else {
            d[k] = CycloNumber(field, 2);
            out.push_back(CMatrix::diagonal(d));
            d[k] = zeta;
            out.push_back(CMatrix::diagonal(d));
        }
    }
    return out;
}

H1GResult hilbert90(const CMatrix& z, const Ambient& g, std::uint64_t seed) {
    const bool special = g.kind == AmbientKind::SL;
    if (g.tau.transposes()) throw UnsupportedError("Hilbert 90 witness needs an additive real structure (no transpose-inverse)");
    if (special && g.tau.mode() != InvolutionMode::Conjugation)
        throw UnsupportedError("SL_n Hilbert 90 witness is implemented for plain conjugation only");
    const CMatrix zinv = z.inverse();
    for (std::size_t k = 0; k < kHilbert90Budget; ++k) {
        CMatrix c = hilbert90_candidate(g.field(), g.n, k, seed);
        // tau(c + tau(c) z^-1) = tau(c) + c z = (c + tau(c) z^-1) z.
        CMatrix w = c + g.tau(c) * zinv;
        if (w.determinant().is_zero()) continue;
        w = hilbert90_normalize(w, special);
        if (w.inverse() * g.tau(w) != z) throw Error("internal: Hilbert 90 witness failed verification");
        H1GResult r;
        r.g01 = w;
        r.candidates = {k};
        return r;
    }
    throw DomainError("Hilbert 90 candidate budget exhausted");
}

}  // namespace

std::string to_string(AmbientKind k) {
    switch (k) {
        case AmbientKind::SL: return "SL";
        case AmbientKind::GL: return "GL";
        case AmbientKind::Torus: return "torus";
        case AmbientKind::Finite: return "finite";
        case AmbientKind::Product: return "product";
    }
    return "?";
}

Ambient Ambient::special_linear(AntiRegularMap tau) {
    Ambient a;
    a.kind = AmbientKind::SL;
    a.n = tau.dim();
    a.tau = std::move(tau);
    return a;
}

Ambient Ambient::general_linear(AntiRegularMap tau) {
    Ambient a = special_linear(std::move(tau));
    a.kind = AmbientKind::GL;
    return a;
}

Ambient Ambient::diagonal_torus(AntiRegularMap tau, DiagonalQuasiTorus torus) {
    if (torus.dim() != tau.dim()) throw ValidationError("torus and real structure sizes differ");
    if (!torus.module_for(tau)) throw ValidationError("the real structure does not preserve the torus");
    Ambient a;
    a.kind = AmbientKind::Torus;
    a.n = tau.dim();
    a.tau = std::move(tau);
    a.torus = std::move(torus);
    return a;
}

Ambient Ambient::finite(AntiRegularMap tau, std::vector<CMatrix> elements) {
    if (elements.empty() || !elements.front().is_identity()) throw ValidationError("finite group must list the identity first");
    Ambient a;
    a.kind = AmbientKind::Finite;
    a.n = tau.dim();
    for (const auto& x : elements)
        if (std::find(elements.begin(), elements.end(), tau(x)) == elements.end())
            throw ValidationError("finite group is not stable under the real structure");
    a.tau = std::move(tau);
    a.elements = std::move(elements);
    return a;
}

Ambient Ambient::product(std::vector<Ambient> blocks) {
    if (blocks.empty()) throw ValidationError("a product needs at least one factor");
    std::size_t n = 0;
    bool transposes = blocks.front().tau.transposes(), plain = true;
    for (const auto& b : blocks) {
        n += b.n;
        if (b.tau.transposes() != transposes) throw UnsupportedError("product factors mix transpose-inverse and plain real structures");
        plain = plain && b.tau.mode() == InvolutionMode::Conjugation;
    }
    const FieldPtr& field = blocks.front().field();
    CMatrix twist = CMatrix::identity(field, n);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.n; ++i)
            for (std::size_t j = 0; j < b.n; ++j) twist(offset + i, offset + j) = b.tau.twist()(i, j);
        offset += b.n;
    }
    Ambient a;
    a.kind = AmbientKind::Product;
    a.n = n;
    if (plain)
        a.tau = AntiRegularMap::conjugation(field, n);
    else
        a.tau = AntiRegularMap(transposes ? InvolutionMode::ConjugationTransposeInverseInner : InvolutionMode::ConjugationInner, twist);
    a.blocks = std::move(blocks);
    return a;
}

bool Ambient::contains(const CMatrix& x) const {
    if (x.dim() != n) return false;
    switch (kind) {
        case AmbientKind::SL: return x.determinant().is_one();
        case AmbientKind::GL: return !x.determinant().is_zero();
        case AmbientKind::Torus: return torus->contains(x);
        case AmbientKind::Finite: return std::find(elements.begin(), elements.end(), x) != elements.end();
        case AmbientKind::Product: {
            if (!is_block_diagonal(x, blocks)) return false;
            std::size_t offset = 0;
            for (const auto& b : blocks) {
                if (!b.contains(block(x, offset, b.n))) return false;
                offset += b.n;
            }
            return true;
        }
    }
    return false;
}

std::vector<CMatrix> Ambient::generators() const {
    switch (kind) {
        case AmbientKind::SL: return linear_generators(field(), n, true);
        case AmbientKind::GL: return linear_generators(field(), n, false);
        case AmbientKind::Torus: return torus_generators(*torus, field());
        case AmbientKind::Finite: return elements;
        case AmbientKind::Product: {
            std::vector<CMatrix> out;
            std::size_t offset = 0;
            for (const auto& b : blocks) {
                for (const auto& g : b.generators()) out.push_back(embed(g, offset, n));
                offset += b.n;
            }
            return out;
        }
    }
    return {};
}

CMatrix hilbert90_candidate(const FieldPtr& field, std::size_t n, std::size_t index, std::uint64_t seed) {
    const auto m = static_cast<std::size_t>(field->conductor());
    CMatrix id = CMatrix::identity(field, n);
    if (index == 0) return id;
    if (index < m) return id.scaled(CycloNumber::zeta(field, static_cast<std::int64_t>(index)));
    std::size_t k = index - m;
    const std::size_t off_diagonal = n * (n - 1) * m;
    if (k < off_diagonal) {
        const std::size_t power = k % m, pair = k / m;
        const std::size_t i = pair / (n - 1), jj = pair % (n - 1);
        const std::size_t j = jj < i ? jj : jj + 1;
        return CMatrix::elementary(field, n, i, j, CycloNumber::zeta(field, static_cast<std::int64_t>(power)));
    }
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index)));
    std::uniform_int_distribution<long> small(-2, 2);
    std::uniform_int_distribution<std::int64_t> power(0, static_cast<std::int64_t>(m) - 1);
    CMatrix c = id;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c(i, j) = CycloNumber(field, small(rng)) + CycloNumber::zeta(field, power(rng)) * CycloNumber(field, small(rng));
    return c;
}

CMatrix hilbert90_normalize(const CMatrix& g, bool special) {
    CMatrix out = g;
    for (std::size_t i = 0; i < g.dim() * g.dim(); ++i) {
        const CycloNumber& x = g(i / g.dim(), i % g.dim());
        if (x.is_zero()) continue;
        for (const auto& c : x.coefficients())
            if (c != 0) {
                out = g.scaled(Rational(1 / c));
                break;
            }
        break;
    }
    if (special) {
        CycloNumber det = out.determinant();
        if (det.conj() != det) throw Error("internal: Hilbert 90 witness has a non-real determinant");
        std::vector<CycloNumber> d(g.dim(), CycloNumber(g.field(), 1));
        d[0] = det.inverse();
        out = CMatrix::diagonal(d) * out;
    }
    return out;
}

H1GResult h1G_decompose(const CMatrix& z, const Ambient& g, std::uint64_t seed) {
    if (!g.contains(z)) throw PreconditionError("cocycle is not in the ambient group");
    if (!(z * g.tau(z)).is_identity()) throw PreconditionError("z * tau(z) != 1");
    switch (g.kind) {
        case AmbientKind::SL:
        case AmbientKind::GL: return hilbert90(z, g, seed);
        case AmbientKind::Torus: {
            auto module = g.torus->module_for(g.tau);
            auto point = g.torus->coordinates(z);
            if (!module || !point) throw Error("internal: torus ambient lost its module");
            auto dec = h1_decompose(*point, *module);
            H1GResult r;
            r.class_index = dec.index;
            if (!dec.trivial()) {
                r.obstruction = "nontrivial class in H^1 of the ambient torus";
                return r;
            }
            r.g01 = g.torus->realize(dec.witness, g.field());
            return r;
        }
        case AmbientKind::Finite: {
            for (std::size_t k = 0; k < g.elements.size(); ++k)
                if (g.elements[k].inverse() * g.tau(g.elements[k]) == z) {
                    H1GResult r;
                    r.g01 = g.elements[k];
                    r.candidates = {k};
                    return r;
                }
            H1GResult r;
            r.obstruction = "no element g of the finite ambient has g^-1 tau(g) = z";
            return r;
        }
        case AmbientKind::Product: {
            H1GResult r;
            CMatrix g01 = CMatrix::identity(g.field(), g.n);
            std::size_t offset = 0;
            for (std::size_t b = 0; b < g.blocks.size(); ++b) {
                const Ambient& part = g.blocks[b];
                auto sub = h1G_decompose(block(z, offset, part.n), part, seed);
                if (!sub.trivial()) {
                    r.class_index = sub.class_index;
                    r.obstruction = "factor " + std::to_string(b) + ": " + sub.obstruction;
                    return r;
                }
                for (std::size_t i = 0; i < part.n; ++i)
                    for (std::size_t j = 0; j < part.n; ++j) g01(offset + i, offset + j) = (*sub.g01)(i, j);
                r.candidates.insert(r.candidates.end(), sub.candidates.begin(), sub.candidates.end());
                offset += part.n;
            }
            r.g01 = g01;
            return r;
        }
    }
    return {};
}

}  // namespace realpt
