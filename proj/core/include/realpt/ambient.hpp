#pragma once

#include "realpt/involution.hpp"
#include "realpt/realization.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace realpt {

enum class AmbientKind { SL, GL, Torus, Finite, Product };

std::string to_string(AmbientKind k);

/// The ambient group G with its real structure tau, from a fixed catalog.
struct Ambient {
    AmbientKind kind = AmbientKind::GL;
    std::size_t n = 0;
    AntiRegularMap tau;
    std::optional<DiagonalQuasiTorus> torus;   ///< Torus
    std::vector<CMatrix> elements;             ///< Finite, identity first
    std::vector<Ambient> blocks;               ///< Product, block diagonal

    static Ambient special_linear(AntiRegularMap tau);
    static Ambient general_linear(AntiRegularMap tau);
    static Ambient diagonal_torus(AntiRegularMap tau, DiagonalQuasiTorus torus);
    static Ambient finite(AntiRegularMap tau, std::vector<CMatrix> elements);
    static Ambient product(std::vector<Ambient> blocks);

    const FieldPtr& field() const { return tau.twist().field(); }
    bool contains(const CMatrix& x) const;
    std::vector<CMatrix> generators() const;
};

/// The i-th matrix c tried for the Hilbert 90 witness c + tau(c) z^-1:
/// identity, zeta^k, 1 + zeta^k E_ij, then seeded pseudorandom matrices.
CMatrix hilbert90_candidate(const FieldPtr& field, std::size_t n, std::size_t index, std::uint64_t seed);
constexpr std::size_t kHilbert90Budget = 4096;

/// Divides by the rational lowest-degree coefficient of the first nonzero entry
/// and, for SL, fixes the determinant with a real diagonal factor.
CMatrix hilbert90_normalize(const CMatrix& g, bool special);

struct H1GResult {
    std::optional<CMatrix> g01;            ///< z = g01^-1 tau(g01)
    std::vector<std::size_t> candidates;   ///< per linear block: Hilbert 90 candidate index
    std::size_t class_index = 0;           ///< torus blocks: class in H^1
    std::string obstruction;

    bool trivial() const { return g01.has_value(); }
};

/// Decides whether the cocycle z (z tau(z) = 1) is a coboundary and returns g01 if so.
H1GResult h1G_decompose(const CMatrix& z, const Ambient& g, std::uint64_t seed = kDefaultSeed);

}  // namespace realpt
