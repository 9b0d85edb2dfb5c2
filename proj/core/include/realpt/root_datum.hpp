#pragma once

#include "realpt/gamma_module.hpp"

#include <string>
#include <vector>

namespace realpt {

using IntVector = std::vector<Integer>;

/// Cartan matrix C_ij = <alpha_i, alpha_j^v> of a named type such as "A2",
/// "G2" or a product "A1xB2". Throws ValidationError on unknown names.
IntMatrix cartan_matrix(const std::string& name);

/// Throws ValidationError unless c is the Cartan matrix of a finite root system.
void validate_cartan(const IntMatrix& c);

/// Based root datum (X, X^v, R, R^v, S, S^v) with X = Z^r.
class BasedRootDatum {
public:
    BasedRootDatum() = default;
    /// Simple roots (columns of an r x s matrix over X) and simple coroots
    /// (columns over X^v); the full systems are generated by reflections.
    BasedRootDatum(IntMatrix simple_roots, IntMatrix simple_coroots);
    /// X = weight lattice, X^v spanned by the simple coroots.
    static BasedRootDatum simply_connected(const IntMatrix& cartan);
    /// X = root lattice.
    static BasedRootDatum adjoint(const IntMatrix& cartan);
    /// Rank r torus: no roots.
    static BasedRootDatum torus(std::size_t rank);

    std::size_t rank() const { return simple_roots_.rows(); }
    std::size_t semisimple_rank() const { return simple_roots_.cols(); }
    const IntMatrix& simple_roots() const { return simple_roots_; }
    const IntMatrix& simple_coroots() const { return simple_coroots_; }
    const IntMatrix& cartan() const { return cartan_; }
    /// All roots in X coordinates and the matching coroots.
    const std::vector<IntVector>& roots() const { return roots_; }
    const std::vector<IntVector>& coroots() const { return coroots_; }
    /// All roots in the basis of simple roots.
    const std::vector<IntVector>& roots_in_simple_basis() const { return root_coeffs_; }
    /// Simple coroots form a basis of X^v.
    bool is_simply_connected() const;

private:
    IntMatrix simple_roots_, simple_coroots_, cartan_;
    std::vector<IntVector> roots_, coroots_, root_coeffs_;
};

/// Root system (simple-root coordinates) of a Cartan matrix.
std::vector<IntVector> root_system(const IntMatrix& cartan);

/// Permutation nu of the simple roots with nu^2 = id preserving the Cartan matrix.
class DiagramInvolution {
public:
    DiagramInvolution() = default;
    DiagramInvolution(std::vector<std::size_t> perm, const IntMatrix& cartan);
    static DiagramInvolution identity(std::size_t n);

    std::size_t operator()(std::size_t i) const { return perm_[i]; }
    std::size_t size() const { return perm_.size(); }
    const std::vector<std::size_t>& permutation() const { return perm_; }
    /// Permutation matrix P with P e_i = e_nu(i).
    IntMatrix matrix() const;

private:
    std::vector<std::size_t> perm_;
};

/// Every diagram involution of the Cartan matrix, identity first.
std::vector<DiagramInvolution> diagram_involutions(const IntMatrix& cartan);

struct FundamentalTorusDecomposition {
    std::size_t m = 0;   ///< U(1) factors
    std::size_t n = 0;   ///< C^x factors (pairs)
    std::vector<std::size_t> fixed;                          ///< nu-fixed simple roots
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< swapped (beta, beta')
    IntMatrix twisted;        ///< -P_nu on the simple-coroot basis of X^v
    IntMatrix basis_change;   ///< columns: adapted basis in simple-coroot coordinates
    IntMatrix block;          ///< basis_change^-1 * twisted * basis_change
};

FundamentalTorusDecomposition fundamental_torus_decomposition(const IntMatrix& cartan, const DiagramInvolution& nu);
/// Throws UnsupportedError unless the datum is simply connected.
FundamentalTorusDecomposition fundamental_torus_decomposition(const BasedRootDatum& datum, const DiagramInvolution& nu);

/// Character module of the fundamental torus T^sc (coordinates on the
/// simple-coroot basis), with Gamma acting through the twisted action.
GammaModule fundamental_torus_module(const FundamentalTorusDecomposition& d);

struct RPerpVerdict {
    bool ok = true;
    std::size_t witnessed = 0;
    IntVector violating_root;
};

/// Every root pairs nonzero with one of the nu-fixed coweights
/// w_i^v (i fixed) or w_j^v + w_j'^v (swapped pair).
RPerpVerdict verify_r_perp(const std::vector<IntVector>& roots_in_simple_basis, const DiagramInvolution& nu);
RPerpVerdict verify_r_perp(const BasedRootDatum& datum, const DiagramInvolution& nu);

/// Square root of a real point t of T^sc given on the simple-coroot basis:
/// U(1) angles are halved, C^x pairs take the principal root and its conjugate.
QuasiTorusPoint sqrt_in_torus(const QuasiTorusPoint& t, const FundamentalTorusDecomposition& d);

/// Points of T^sc in adapted coordinates and back.
QuasiTorusPoint to_adapted(const QuasiTorusPoint& t, const FundamentalTorusDecomposition& d);
QuasiTorusPoint from_adapted(const QuasiTorusPoint& t, const FundamentalTorusDecomposition& d);

/// Pushes a point along the lattice map: coordinate i of the image is
/// prod_k p_k^(m_ik).
QuasiTorusPoint push_point(const IntMatrix& m, const QuasiTorusPoint& p);

/// Character module of the center C = Z(H): X / <R> with involution sigma on X.
GammaModule center_module(const BasedRootDatum& datum, const IntMatrix& sigma);

struct CenterCover {
    GammaModule csc;   ///< P / Q of the derived datum
    /// rho on points: coordinate i of rho(t) is prod_j t_j^(rho(i, j)),
    /// rho(i, j) = <e_i, alpha_j^v>.
    IntMatrix rho;
};

/// C^sc with its involution induced from sigma, and the map rho: C^sc -> C.
/// Checks that rho commutes with the Gamma-actions on the representatives.
CenterCover csc_and_rho(const BasedRootDatum& datum, const IntMatrix& sigma);

}  // namespace realpt
