#pragma once

#include "realpt/int_matrix.hpp"
#include "realpt/polar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace realpt {

/// Finitely generated abelian group Z^a / im(B) with an involution sigma.
///
/// The module is read as the character group of a diagonalizable group
/// D = Hom(M, C^x); points of D are recorded by their values on the
/// generators e_1..e_a. For a torus the involution on characters is the
/// transpose of the one on cocharacters.
class GammaModule {
public:
    GammaModule() = default;
    /// Validates sigma^2 = 1 and sigma(im B) in im B modulo relations.
    GammaModule(IntMatrix relations, IntMatrix involution);
    /// Free module of the given involution.
    static GammaModule free(IntMatrix involution);

    std::size_t rank() const { return sigma_.rows(); }
    const IntMatrix& relations() const { return b_; }
    const IntMatrix& involution() const { return sigma_; }
    /// Exponent of the torsion subgroup (1 when torsion-free).
    Integer torsion_exponent() const;

    friend bool operator==(const GammaModule& a, const GammaModule& b) {
        return a.b_ == b.b_ && a.sigma_ == b.sigma_;
    }

private:
    IntMatrix b_;
    IntMatrix sigma_;
};

/// Direct sum of modules; relations and involutions become block diagonal.
GammaModule direct_sum(const GammaModule& a, const GammaModule& b);

/// A point of Hom(M, C^x), one polar coordinate per generator.
struct QuasiTorusPoint {
    std::vector<Polar> coords;

    static QuasiTorusPoint identity(std::size_t rank);
    static QuasiTorusPoint from_angles(const std::vector<Rational>& angles);
    static QuasiTorusPoint from_cyclo(const std::vector<CycloNumber>& values);

    std::size_t size() const { return coords.size(); }
    QuasiTorusPoint operator*(const QuasiTorusPoint& o) const;
    QuasiTorusPoint inverse() const;
    bool is_identity() const;
    std::vector<Rational> angles() const;
    std::vector<CycloNumber> realize(const FieldPtr& field) const;
    /// Smallest conductor containing every coordinate.
    std::int64_t required_conductor(std::int64_t m) const;

    friend bool operator==(const QuasiTorusPoint& a, const QuasiTorusPoint& b) { return a.coords == b.coords; }
    friend bool operator!=(const QuasiTorusPoint& a, const QuasiTorusPoint& b) { return !(a == b); }
    std::string to_string() const;
};

/// Every relation evaluates to 1 on the point.
bool is_valid_point(const GammaModule& M, const QuasiTorusPoint& p);
/// (gamma p)(chi) = conj(p(sigma chi)).
QuasiTorusPoint gamma_act(const GammaModule& M, const QuasiTorusPoint& p);

struct CohomologyGroup {
    std::vector<Integer> divisors;   ///< elementary divisors >= 2
    Integer order = 1;
    std::vector<QuasiTorusPoint> representatives;   ///< identity first
};

/// H^2 of the diagonalizable group: ker(1 - sigma) / im(1 + sigma) on M.
CohomologyGroup tate_h0(const GammaModule& M);
/// H^1 of the diagonalizable group: ker(1 + sigma) / im(1 - sigma) on M.
CohomologyGroup tate_hminus1(const GammaModule& M);

struct Decomposition {
    std::size_t index = 0;        ///< class index into the representatives
    QuasiTorusPoint representative;
    QuasiTorusPoint witness;      ///< b as in the defining identity
    bool trivial() const { return index == 0; }
};

/// Writes a gamma-fixed c as z_i * b * gamma(b).
Decomposition h2_decompose(const QuasiTorusPoint& c, const GammaModule& M);
Decomposition h2_decompose(const QuasiTorusPoint& c, const GammaModule& M, const CohomologyGroup& h2);
/// Writes a cocycle z (z * gamma(z) = 1) as b^-1 * z_i * gamma(b).
Decomposition h1_decompose(const QuasiTorusPoint& z, const GammaModule& M);
Decomposition h1_decompose(const QuasiTorusPoint& z, const GammaModule& M, const CohomologyGroup& h1);

/// b with c = target * b * gamma(b), if one exists.
std::optional<QuasiTorusPoint> h2_witness(const QuasiTorusPoint& c, const QuasiTorusPoint& target, const GammaModule& M);
/// b with z = b^-1 * target * gamma(b), if one exists.
std::optional<QuasiTorusPoint> h1_witness(const QuasiTorusPoint& z, const QuasiTorusPoint& target, const GammaModule& M);

/// Z-basis (full column rank) of the lattice spanned by the columns.
IntMatrix lattice_basis(const IntMatrix& generators);

}  // namespace realpt
