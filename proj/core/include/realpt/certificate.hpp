#pragma once

#include "realpt/pipeline.hpp"
#include "realpt/serialize.hpp"

#include <string>

namespace realpt {

inline constexpr const char* kCertificateFormat = "realpt-certificate/1";
inline constexpr const char* kRealPointStatement = "y1 = y0 * g01^-1";

std::string sha256_hex(const std::string& data);
/// Digest of the canonical problem serialization.
std::string problem_digest(const ProblemSpec& p);

/// Self-contained certificate document: the problem, its digest, the verdict and
/// the witness chain, plus the names of the checks the verifier must pass.
Json certificate_document(const Certificate& c, const ProblemSpec& p);

/// Standalone verification from the document alone. Parse errors and every
/// field mismatch are reported as failures, never thrown.
CertificateCheck verify_certificate_document(const Json& doc);

/// Trace of a run: verdict, certificate, stage timings and chosen indices.
Json run_report_json(const RunReport& r, const ProblemSpec& p);

}  // namespace realpt
