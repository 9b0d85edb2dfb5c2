#pragma once

#include "realpt/ambient.hpp"
#include "realpt/splitting.hpp"
#include "realpt/stabilizer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace realpt {

/// Y = H \ G with base point y0 = H * g_y0. The real structure on Y comes from
/// tau and g_y0 via g_y0 tau(g_y0) in H and g_y0 tau(H) g_y0^-1 = H.
struct ProblemSpec {
    std::int64_t conductor = 4;
    Ambient ambient;
    StabilizerSpec stabilizer;
    CMatrix g_y0;
    std::uint64_t seed = kDefaultSeed;

    const FieldPtr& field() const { return g_y0.field(); }
};

struct ProblemVerdict {
    bool ok = true;
    std::string failure;
    std::string witness;
};

ProblemVerdict validate_problem(const ProblemSpec& p);

/// z = a g_y0 with z tau(z) = 1, a = a3 a2 a1 (finite, identity component, unipotent).
struct ProblemAResult {
    std::optional<CMatrix> z;
    std::optional<CMatrix> a, a1, a2, a3;
    std::size_t finite_class = 0;    ///< which finite class representative succeeded
    std::size_t center_index = 0;    ///< central point used by the reductive step
    std::string failing_stage;
    std::vector<std::string> obstructions;   ///< one per finite class tried

    bool found() const { return z.has_value(); }
};

ProblemAResult solve_problem_A(const ProblemSpec& p);

enum class Verdict { RealPoint, NoRealPoint };
std::string to_string(Verdict v);

struct Certificate {
    Verdict verdict = Verdict::NoRealPoint;
    // Real point: z' = g01^-1 tau(g01) = h_j z, z = a g_y0.
    std::optional<CMatrix> g01, z_prime, z, h_j, a, a1, a2, a3;
    std::vector<std::size_t> hilbert90_candidates;
    // No real point.
    std::string failing_stage;
    std::string obstruction;
};

struct StageTiming {
    std::string stage;
    double seconds = 0;
};

struct RunReport {
    Certificate certificate;
    std::size_t finite_class = 0;
    std::size_t center_index = 0;
    std::size_t h1_index = 0;
    std::vector<StageTiming> timings;
};

/// Descends z through H^1 of the twisted stabilizer; returns the certificate and the class index used.
std::pair<Certificate, std::size_t> stepB_descend(const CMatrix& z, const ProblemSpec& p);

/// Full run. Throws ValidationError on invalid problems, UnsupportedError on unsupported shapes.
RunReport solve(const ProblemSpec& p);

struct CertificateCheck {
    bool ok = true;
    std::vector<std::string> passed;
    std::vector<std::string> failures;
};

/// Re-derives every identity of a real point certificate from the problem
/// and replays the solver for a no-real-point verdict.
CertificateCheck verify_certificate(const Certificate& c, const ProblemSpec& p);

struct RealOrbit {
    CMatrix h;     ///< class in H^1 of the twisted stabilizer
    CMatrix g01;   ///< y0 * g01^-1 is a real point of the orbit
};

/// One representative per real orbit, from a real point certificate.
std::vector<RealOrbit> enumerate_real_orbits(const Certificate& c, const ProblemSpec& p);

}  // namespace realpt
