#pragma once

#include "realpt/involution.hpp"
#include "realpt/matrix.hpp"
#include "realpt/realization.hpp"
#include "realpt/root_datum.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace realpt {

struct CocycleVerdict {
    bool ok = true;
    std::string failure;
    std::string witness;
};

/// Checks f^2 = inn(h) and f(h) = h on the generators and on sampled words.
CocycleVerdict verify_two_cocycle(const AntiRegularMap& f, const CMatrix& h, const std::vector<CMatrix>& generators,
                                  std::uint64_t seed = kDefaultSeed);

/// A pair (f, h) with f^2 = inn(h) and f(h) = h, standing in for an extension
/// of Gamma by the group the generators span. Checked at construction.
class TwoCocycle {
public:
    TwoCocycle(AntiRegularMap f, CMatrix h, const std::vector<CMatrix>& generators);

    const AntiRegularMap& f() const { return f_; }
    const CMatrix& h() const { return h_; }

    /// (inn(a) o f, a f(a) h): the same extension seen from the element a x.
    TwoCocycle twisted_by(const CMatrix& a) const;
    /// Whether a f(a) h = 1.
    bool splits(const CMatrix& a) const;

private:
    TwoCocycle(AntiRegularMap f, CMatrix h) : f_(std::move(f)), h_(std::move(h)) {}
    AntiRegularMap f_;
    CMatrix h_;
};

struct SplittingResult {
    std::optional<CMatrix> a;
    std::string obstruction;                        ///< empty when a is set
    std::optional<std::size_t> obstruction_class;   ///< class of h in H^2 of the center
    std::vector<std::size_t> image_classes;         ///< classes hit by the simply connected center
    std::vector<CMatrix> representatives;           ///< one splitting element per conjugacy class
    std::size_t witness_index = 0;                  ///< which candidate succeeded

    bool found() const { return a.has_value(); }
};

/// a ~ b a f(b)^-1 classes and solutions of a f(a) h in `kernel`, over a finite
/// list of elements (or coset representatives when `kernel` is a normal subgroup).
using Membership = std::function<bool(const CMatrix&)>;
SplittingResult stepA1_finite(const TwoCocycle& c, const std::vector<CMatrix>& elements, const Membership& kernel = {});

/// Always finds a = exp(-log(h) / 2) for unipotent h.
SplittingResult stepA3_unipotent(const TwoCocycle& c);

struct PinningNormalization {
    AntiRegularMap f;
    CMatrix h;
    CMatrix a;   ///< f = inn(a) o f_x, h = a f_x(a) h_x
};

/// Moves f to a map preserving the pinning; `hint` must carry (T, B) back to
/// itself when f does not.
PinningNormalization normalize_to_pinning(const TwoCocycle& c, const PinnedRealization& r,
                                          const BasedRootDatum& datum,
                                          const std::optional<CMatrix>& hint = std::nullopt);

/// Splitting for a pinning-preserving f and central h on a reductive group.
/// `torus_hint` g is used when T is not fundamental: g^-1 f(g) must make
/// inn(g^-1) f inn(g) preserve T with a solvable square root.
SplittingResult stepA2_reductive(const AntiRegularMap& f, const CMatrix& h, const BasedRootDatum& datum,
                                 const PinnedRealization& r, const std::optional<CMatrix>& torus_hint = std::nullopt);

/// Splitting for a cocycle whose h lies in a diagonal quasi-torus modulo the
/// unipotent radical; only the diagonal of h is used.
SplittingResult stepA2_torus(const AntiRegularMap& f, const CMatrix& h, const DiagonalQuasiTorus& torus);

}  // namespace realpt
