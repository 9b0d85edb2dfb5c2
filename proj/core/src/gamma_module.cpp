#include "realpt/gamma_module.hpp"

#include "realpt/errors.hpp"

#include <sstream>

namespace realpt {

namespace {

bool in_span(const IntMatrix& b, const IntMatrix& cols) {
    if (cols.cols() == 0) return true;
    if (b.cols() == 0) return cols.is_zero();
    return solve_integer(b, cols).has_value();
}

// Iterations allowed while enumerating representatives.
constexpr std::uint64_t kGridLimit = std::uint64_t(1) << 22;

}  // namespace

GammaModule::GammaModule(IntMatrix relations, IntMatrix involution)
    : b_(std::move(relations)), sigma_(std::move(involution)) {
    const std::size_t a = sigma_.rows();
    if (sigma_.cols() != a) throw ValidationError("involution matrix must be square");
    if (b_.rows() != a) {
        if (b_.rows() == 0 && b_.cols() == 0)
            b_ = IntMatrix(a, 0);
        else
            throw ValidationError("relations matrix must have one row per generator");
    }
    if (!in_span(b_, sigma_ * sigma_ - IntMatrix::identity(a)))
        throw ValidationError("involution does not square to the identity modulo relations");
    if (!in_span(b_, sigma_ * b_)) throw ValidationError("involution does not preserve the relation subgroup");
}

GammaModule GammaModule::free(IntMatrix involution) {
    const std::size_t a = involution.rows();
    return GammaModule(IntMatrix(a, 0), std::move(involution));
}

Integer GammaModule::torsion_exponent() const {
    Integer e = 1;
    if (b_.cols() == 0) return e;
    for (const auto& d : smith_normal_form(b_).diagonal())
        if (d != 0) e = lcm(e, d);
    return e;
}

GammaModule direct_sum(const GammaModule& a, const GammaModule& b) {
    const std::size_t ra = a.rank(), rb = b.rank();
    const std::size_t ka = a.relations().cols(), kb = b.relations().cols();
    IntMatrix rel(ra + rb, ka + kb), sig(ra + rb, ra + rb);
    for (std::size_t i = 0; i < ra; ++i) {
        for (std::size_t j = 0; j < ka; ++j) rel(i, j) = a.relations()(i, j);
        for (std::size_t j = 0; j < ra; ++j) sig(i, j) = a.involution()(i, j);
    }
    for (std::size_t i = 0; i < rb; ++i) {
        for (std::size_t j = 0; j < kb; ++j) rel(ra + i, ka + j) = b.relations()(i, j);
        for (std::size_t j = 0; j < rb; ++j) sig(ra + i, ra + j) = b.involution()(i, j);
    }
    return GammaModule(rel, sig);
}

QuasiTorusPoint QuasiTorusPoint::identity(std::size_t rank) { return QuasiTorusPoint{std::vector<Polar>(rank)}; }

QuasiTorusPoint QuasiTorusPoint::from_angles(const std::vector<Rational>& angles) {
    QuasiTorusPoint p;
    for (const auto& a : angles) p.coords.push_back(Polar::root_of_unity(a));
    return p;
}

QuasiTorusPoint QuasiTorusPoint::from_cyclo(const std::vector<CycloNumber>& values) {
    QuasiTorusPoint p;
    for (const auto& v : values) p.coords.push_back(Polar::from_cyclo(v));
    return p;
}

QuasiTorusPoint QuasiTorusPoint::operator*(const QuasiTorusPoint& o) const {
    if (size() != o.size()) throw DomainError("point product: rank mismatch");
    QuasiTorusPoint r;
    for (std::size_t i = 0; i < size(); ++i) r.coords.push_back(coords[i] * o.coords[i]);
    return r;
}

QuasiTorusPoint QuasiTorusPoint::inverse() const {
    QuasiTorusPoint r;
    for (const auto& c : coords) r.coords.push_back(c.inverse());
    return r;
}

bool QuasiTorusPoint::is_identity() const {
    for (const auto& c : coords)
        if (!c.is_one()) return false;
    return true;
}

std::vector<Rational> QuasiTorusPoint::angles() const {
    std::vector<Rational> a;
    for (const auto& c : coords) a.push_back(c.angle);
    return a;
}

std::vector<CycloNumber> QuasiTorusPoint::realize(const FieldPtr& field) const {
    std::vector<CycloNumber> out;
    for (const auto& c : coords) out.push_back(c.realize(field));
    return out;
}

std::int64_t QuasiTorusPoint::required_conductor(std::int64_t m) const {
    for (const auto& c : coords) m = c.required_conductor(m);
    return m;
}

std::string QuasiTorusPoint::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < size(); ++i) os << (i ? ", " : "") << coords[i].to_string();
    os << ")";
    return os.str();
}

bool is_valid_point(const GammaModule& M, const QuasiTorusPoint& p) {
    if (p.size() != M.rank()) return false;
    const IntMatrix& b = M.relations();
    for (std::size_t k = 0; k < b.cols(); ++k) {
        Polar v;
        for (std::size_t i = 0; i < M.rank(); ++i)
            if (b(i, k) != 0) v = v * p.coords[i].pow(b(i, k));
        if (!v.is_one()) return false;
    }
    return true;
}

QuasiTorusPoint gamma_act(const GammaModule& M, const QuasiTorusPoint& p) {
    if (p.size() != M.rank()) throw DomainError("gamma action: rank mismatch");
    const IntMatrix& s = M.involution();
    QuasiTorusPoint r;
    for (std::size_t i = 0; i < M.rank(); ++i) {
        Polar v;
        for (std::size_t j = 0; j < M.rank(); ++j)
            if (s(j, i) != 0) v = v * p.coords[j].pow(s(j, i));
        r.coords.push_back(v.conj());
    }
    return r;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
    SmithForm s = smith_normal_form(generators);
    IntMatrix uinv = s.U.inverse_unimodular();
    IntMatrix basis(generators.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < generators.rows(); ++i) basis(i, j) = uinv(i, j) * s.D(j, j);
    return basis;
}

namespace {

// sign = +1: ker(1 - sigma) / im(1 + sigma); sign = -1: ker(1 + sigma) / im(1 - sigma).
// Lexicographic odometer over {0..N-1}^a; false once it wraps around.
bool advance(std::vector<unsigned long>& digits, unsigned long N) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < N) return true;
        digits[k] = 0;
    }
    return false;
}

struct TateShape {
    std::vector<Integer> divisors;
    Integer order = 1;
};

TateShape tate_shape(const GammaModule& M, int sign) {
    const std::size_t a = M.rank();
    const IntMatrix id = IntMatrix::identity(a);
    IntMatrix s = M.involution();
    if (sign < 0) s = -s;
    const IntMatrix& b = M.relations();
    IntMatrix kernel_of = (id - s).hcat(-b);
    IntMatrix full = integer_kernel(kernel_of);
    IntMatrix ker(a, full.cols());
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < full.cols(); ++j) ker(i, j) = full(i, j);
    IntMatrix l1 = lattice_basis(ker.hcat(b));
    IntMatrix l2 = (id + s).hcat(b);
    auto y = solve_integer(l1, l2);
    if (!y) throw Error("internal: image of the norm map escapes the kernel");
    TateShape t;
    SmithForm sy = smith_normal_form(*y);
    if (sy.rank < l1.cols()) throw Error("internal: Tate group is infinite");
    for (std::size_t i = 0; i < sy.rank; ++i) {
        const Integer& d = sy.D(i, i);
        t.order *= d;
        if (d >= 2) t.divisors.push_back(d);
    }
    return t;
}

// Angle part of the coboundary equation: (1 - sign sigma^T) phi = delta with
// B^T phi = 0, all modulo Z.
std::optional<std::vector<Rational>> solve_angles(const GammaModule& M, int sign, const std::vector<Rational>& delta) {
    const std::size_t a = M.rank();
    IntMatrix g = IntMatrix::identity(a) - (sign > 0 ? M.involution().transpose() : -M.involution().transpose());
    IntMatrix stacked = g.vcat(M.relations().transpose());
    std::vector<Rational> rhs = delta;
    rhs.resize(stacked.rows());
    return solve_mod_one(stacked, rhs);
}

QuasiTorusPoint angles_with_moduli(const std::vector<Rational>& phi, const QuasiTorusPoint& moduli_from,
                                   const Rational& power) {
    QuasiTorusPoint b;
    for (std::size_t i = 0; i < phi.size(); ++i)
        b.coords.emplace_back(moduli_from.coords[i].modulus.pow(power), phi[i]);
    return b;
}

CohomologyGroup tate_group(const GammaModule& M, int sign) {
    TateShape shape = tate_shape(M, sign);
    CohomologyGroup g;
    g.divisors = shape.divisors;
    g.order = shape.order;
    const std::size_t a = M.rank();
    const Integer n = 2 * M.torsion_exponent();
    if (!n.fits_ulong_p()) throw UnsupportedError("torsion exponent too large to enumerate representatives");
    const unsigned long N = n.get_ui();
    // Cocycle condition on angles: (1 + sign sigma^T) theta = 0 mod Z.
    IntMatrix cond = IntMatrix::identity(a) + (sign > 0 ? M.involution().transpose() : -M.involution().transpose());
    cond = cond.vcat(M.relations().transpose());
    std::vector<unsigned long> digits(a, 0);
    std::uint64_t steps = 0;
    do {
        if (++steps > kGridLimit) throw UnsupportedError("representative search exceeded its budget");
        std::vector<Rational> theta(a);
        for (std::size_t i = 0; i < a; ++i) {
            theta[i] = Rational(Integer(digits[i]), n);
            theta[i].canonicalize();
        }
        bool cocycle = true;
        for (const auto& v : cond.apply(theta))
            if (!is_integral(v)) {
                cocycle = false;
                break;
            }
        if (!cocycle) continue;
        bool fresh = true;
        for (const auto& r : g.representatives) {
            std::vector<Rational> delta(a);
            auto ra = r.angles();
            for (std::size_t i = 0; i < a; ++i) delta[i] = theta[i] - ra[i];
            if (solve_angles(M, sign, delta)) {
                fresh = false;
                break;
            }
        }
        if (fresh) g.representatives.push_back(QuasiTorusPoint::from_angles(theta));
        if (Integer(g.representatives.size()) == g.order) return g;
    } while (advance(digits, N));
    if (Integer(g.representatives.size()) != g.order)
        throw Error("internal: found " + std::to_string(g.representatives.size()) + " representatives for a group of order " +
                    g.order.get_str());
    return g;
}

}  // namespace

CohomologyGroup tate_h0(const GammaModule& M) { return tate_group(M, +1); }
CohomologyGroup tate_hminus1(const GammaModule& M) { return tate_group(M, -1); }

std::optional<QuasiTorusPoint> h2_witness(const QuasiTorusPoint& c, const QuasiTorusPoint& target, const GammaModule& M) {
    QuasiTorusPoint d = c * target.inverse();
    auto da = d.angles();
    auto phi = solve_angles(M, +1, da);
    if (!phi) return std::nullopt;
    QuasiTorusPoint b = angles_with_moduli(*phi, d, frac(1, 2));
    if (target * b * gamma_act(M, b) != c) throw Error("internal: H^2 witness failed verification");
    return b;
}

std::optional<QuasiTorusPoint> h1_witness(const QuasiTorusPoint& z, const QuasiTorusPoint& target, const GammaModule& M) {
    QuasiTorusPoint d = z * target.inverse();
    auto da = d.angles();
    for (auto& x : da) x = -x;
    auto phi = solve_angles(M, -1, da);
    if (!phi) return std::nullopt;
    QuasiTorusPoint b = angles_with_moduli(*phi, d, frac(-1, 2));
    if (b.inverse() * target * gamma_act(M, b) != z) throw Error("internal: H^1 witness failed verification");
    return b;
}

Decomposition h2_decompose(const QuasiTorusPoint& c, const GammaModule& M) { return h2_decompose(c, M, tate_h0(M)); }

Decomposition h2_decompose(const QuasiTorusPoint& c, const GammaModule& M, const CohomologyGroup& h2) {
    if (!is_valid_point(M, c)) throw PreconditionError("point " + c.to_string() + " violates the module relations");
    if (gamma_act(M, c) != c) throw PreconditionError("point " + c.to_string() + " is not fixed by complex conjugation");
    for (std::size_t i = 0; i < h2.representatives.size(); ++i)
        if (auto b = h2_witness(c, h2.representatives[i], M)) return {i, h2.representatives[i], *b};
    throw Error("internal: no H^2 class matched " + c.to_string());
}

Decomposition h1_decompose(const QuasiTorusPoint& z, const GammaModule& M) { return h1_decompose(z, M, tate_hminus1(M)); }

Decomposition h1_decompose(const QuasiTorusPoint& z, const GammaModule& M, const CohomologyGroup& h1) {
    if (!is_valid_point(M, z)) throw PreconditionError("point " + z.to_string() + " violates the module relations");
    if (!(z * gamma_act(M, z)).is_identity())
        throw PreconditionError("point " + z.to_string() + " is not a cocycle: z * gamma(z) != 1");
    for (std::size_t i = 0; i < h1.representatives.size(); ++i)
        if (auto b = h1_witness(z, h1.representatives[i], M)) return {i, h1.representatives[i], *b};
    throw Error("internal: no H^1 class matched " + z.to_string());
}

}  // namespace realpt
