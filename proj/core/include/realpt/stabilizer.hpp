#pragma once

#include "realpt/involution.hpp"
#include "realpt/realization.hpp"

#include <optional>
#include <string>
#include <vector>

namespace realpt {

/// A named connected reductive identity component occupying the whole matrix space.
struct ReductivePart {
    std::string name;   ///< "SL" or "GL"
    BasedRootDatum datum;
    PinnedRealization realization;
    std::optional<CMatrix> pinning_hint;
    std::optional<CMatrix> torus_hint;

    static ReductivePart named(const std::string& name, const FieldPtr& field, std::size_t n);
};

/// H in standardized position: H = F * H0 with F finite (coset representatives,
/// identity first) and H0 = T_H * U (T_H diagonal, U upper unitriangular),
/// or H0 a named reductive group.
struct StabilizerSpec {
    std::size_t n = 0;
    FieldPtr field;
    std::vector<CMatrix> finite;
    std::optional<DiagonalQuasiTorus> torus;
    std::vector<CMatrix> unipotent;   ///< nilpotent Lie algebra basis
    std::optional<ReductivePart> reductive;

    static StabilizerSpec trivial(const FieldPtr& field, std::size_t n);

    /// F, or {1} when no finite part was given.
    std::vector<CMatrix> finite_or_identity() const;
    bool in_identity_component(const CMatrix& x) const;
    bool contains(const CMatrix& x) const;
    /// Generators of H: F, sampled torus points, exp of the Lie basis, root subgroups.
    std::vector<CMatrix> generators() const;
    bool identity_component_trivial() const;
};

/// Whether x lies in the complex span of the basis.
bool in_span(const std::vector<CMatrix>& basis, const CMatrix& x);

/// Representatives of H^1 of H twisted by phi = inn(z) o tau, identity first.
/// Throws UnsupportedError for shapes without an assembly rule.
std::vector<CMatrix> h1_of_twisted_stabilizer(const CMatrix& z, const AntiRegularMap& tau, const StabilizerSpec& h);

}  // namespace realpt
