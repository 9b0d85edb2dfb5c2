#pragma once

#include "realpt/gamma_module.hpp"
#include "realpt/involution.hpp"
#include "realpt/matrix.hpp"
#include "realpt/root_datum.hpp"

#include <optional>
#include <vector>

namespace realpt {

/// A diagonalizable subgroup of the diagonal torus of GL_n: the image of
/// Hom(M, C^x), M = Z^a / im(B), under p -> diag(prod_k p_k^(E_ki)).
class DiagonalQuasiTorus {
public:
    DiagonalQuasiTorus() = default;
    /// exponents: a x n; relations: a x k (may have no columns).
    DiagonalQuasiTorus(IntMatrix exponents, IntMatrix relations);

    std::size_t rank() const { return e_.rows(); }
    std::size_t dim() const { return e_.cols(); }
    const IntMatrix& exponents() const { return e_; }
    const IntMatrix& relations() const { return b_; }

    /// The diagonal matrix of a point; throws ConductorError when the field is too small.
    CMatrix realize(const QuasiTorusPoint& p, const FieldPtr& field) const;
    /// Coordinates of a diagonal matrix in the image, or nullopt.
    std::optional<QuasiTorusPoint> coordinates(const CMatrix& d) const;
    /// Membership of a diagonal matrix, decided by the characters vanishing on the image.
    bool contains(const CMatrix& d) const;
    /// The character module with the Gamma-action induced by f, or nullopt when f
    /// does not map the diagonal torus into itself.
    std::optional<GammaModule> module_for(const AntiRegularMap& f) const;

private:
    IntMatrix e_, b_;
    IntMatrix annihilator_;   // n x j: characters of the diagonal torus trivial on the image
};

/// Generators of a Zariski-dense subgroup: powers of 2 along the free directions,
/// then torsion points on the grid of the torsion exponent.
std::vector<CMatrix> torus_generators(const DiagonalQuasiTorus& t, const FieldPtr& field);

/// Action of f on the cocharacters of the diagonal torus of GL_n
/// (column k = exponents of f(lambda_k)), or nullopt when f moves the diagonal.
std::optional<IntMatrix> diagonal_cocharacter_action(const AntiRegularMap& f, std::size_t n);

/// Pinned realization of a based root datum inside GL_n: the cocharacter
/// basis of X^v acts through the exponent rows, and each simple root alpha
/// has a root vector X_alpha (upper triangular).
struct PinnedRealization {
    std::size_t n = 0;
    IntMatrix torus_map;                 ///< r x n
    std::vector<CMatrix> root_vectors;   ///< one per simple root

    /// Standard pinning of SL_n (X^v on simple coroots) and GL_n (X = Z^n).
    static PinnedRealization standard_sl(const FieldPtr& field, std::size_t n);
    static PinnedRealization standard_gl(const FieldPtr& field, std::size_t n);
    /// Torus only, X^v = Z^n.
    static PinnedRealization diagonal(const FieldPtr& field, std::size_t n);

    DiagonalQuasiTorus torus() const { return DiagonalQuasiTorus(torus_map, IntMatrix(torus_map.rows(), 0)); }
};

/// The standard based root datum matching PinnedRealization::standard_sl / standard_gl.
BasedRootDatum standard_sl_datum(std::size_t n);
BasedRootDatum standard_gl_datum(std::size_t n);

struct PinningCheck {
    bool ok = true;
    std::string failure;
};

/// Each X_alpha is nonzero nilpotent and t X_alpha t^-1 = alpha(t) X_alpha on sampled torus points.
PinningCheck verify_pinning(const PinnedRealization& r, const BasedRootDatum& datum, const FieldPtr& field);

CMatrix realize_torus_point(const QuasiTorusPoint& p, const PinnedRealization& r, const FieldPtr& field);

/// sigma_* on X^v: column k holds the coordinates of f(lambda_k); nullopt when f moves T.
std::optional<IntMatrix> cocharacter_action(const AntiRegularMap& f, const PinnedRealization& r);

/// How f acts on the pinning: f(X_alpha) = c_alpha X_nu(alpha).
struct PinningAction {
    std::vector<std::size_t> nu;
    std::vector<CycloNumber> scale;
};

/// nullopt when f does not map T to T and each simple root vector to a multiple of one.
std::optional<PinningAction> pinning_action(const AntiRegularMap& f, const PinnedRealization& r);

/// Differential of f on a nilpotent Lie algebra element: log f(exp X).
CMatrix differential(const AntiRegularMap& f, const CMatrix& x);

}  // namespace realpt
