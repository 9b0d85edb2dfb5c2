#include "realpt/certificate.hpp"

#include "realpt/errors.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <set>
#include <sstream>

namespace realpt {

namespace {

const char* const kMatrixFields[] = {"g01", "z_prime", "z", "h_j", "a", "a1", "a2", "a3"};

std::optional<CMatrix>* matrix_slot(Certificate& c, const std::string& name) {
    if (name == "g01") return &c.g01;
    if (name == "z_prime") return &c.z_prime;
    if (name == "z") return &c.z;
    if (name == "h_j") return &c.h_j;
    if (name == "a") return &c.a;
    if (name == "a1") return &c.a1;
    if (name == "a2") return &c.a2;
    return &c.a3;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("internal: SHA-256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

std::string problem_digest(const ProblemSpec& p) { return sha256_hex(to_json(p).dump()); }

Json certificate_document(const Certificate& c, const ProblemSpec& p) {
    Json doc{{"format", kCertificateFormat},
             {"problem", to_json(p)},
             {"problem_sha256", problem_digest(p)},
             {"verdict", to_string(c.verdict)}};
    if (c.verdict == Verdict::RealPoint) {
        Certificate copy = c;
        for (const char* name : kMatrixFields) doc[name] = to_json(**matrix_slot(copy, name));
        doc["hilbert90_candidates"] = c.hilbert90_candidates;
        doc["real_point"] = kRealPointStatement;
    } else {
        doc["failing_stage"] = c.failing_stage;
        doc["obstruction"] = c.obstruction;
    }
    doc["checks"] = verify_certificate(c, p).passed;
    return doc;
}

CertificateCheck verify_certificate_document(const Json& doc) {
    CertificateCheck out;
    auto failure = [&](const std::string& what) {
        out.ok = false;
        out.failures.push_back(what);
        return out;
    };
    try {
        if (!doc.is_object() || doc.value("format", "") != kCertificateFormat) return failure("unknown certificate format");
        const std::set<std::string> real_keys = {"format", "problem", "problem_sha256", "verdict", "g01", "z_prime", "z", "h_j", "a", "a1",
                                                 "a2", "a3", "hilbert90_candidates", "real_point", "checks"};
        const std::set<std::string> none_keys = {"format", "problem", "problem_sha256", "verdict", "failing_stage", "obstruction", "checks"};
        ProblemSpec p = problem_from_json(doc.at("problem"));
        if (doc.at("problem_sha256") != problem_digest(p)) return failure("problem digest mismatch");
        auto valid = validate_problem(p);
        if (!valid.ok) return failure("problem invalid: " + valid.failure);

        Certificate c;
        const std::string verdict = doc.at("verdict").get<std::string>();
        if (verdict == "RealPoint") {
            c.verdict = Verdict::RealPoint;
            for (auto it = doc.begin(); it != doc.end(); ++it)
                if (!real_keys.count(it.key())) return failure("unexpected field " + it.key());
            for (const char* name : kMatrixFields) *matrix_slot(c, name) = matrix_from_json(doc.at(name), p.field(), name);
            c.hilbert90_candidates = doc.at("hilbert90_candidates").get<std::vector<std::size_t>>();
            if (doc.at("real_point") != kRealPointStatement) return failure("real point statement mismatch");
        } else if (verdict == "NoRealPoint") {
            for (auto it = doc.begin(); it != doc.end(); ++it)
                if (!none_keys.count(it.key())) return failure("unexpected field " + it.key());
            c.failing_stage = doc.at("failing_stage").get<std::string>();
            c.obstruction = doc.at("obstruction").get<std::string>();
        } else {
            return failure("unknown verdict " + verdict);
        }
        out = verify_certificate(c, p);
        if (out.ok && doc.at("checks") != Json(out.passed)) {
            out.ok = false;
            out.failures.push_back("recorded checks differ from the recomputed checks");
        }
        return out;
    } catch (const Json::exception& e) {
        return failure(std::string("malformed certificate: ") + e.what());
    } catch (const Error& e) {
        return failure(e.what());
    }
}

Json run_report_json(const RunReport& r, const ProblemSpec& p) {
    Json timings = Json::array();
    for (const auto& t : r.timings) timings.push_back({{"stage", t.stage}, {"microseconds", static_cast<std::int64_t>(t.seconds * 1e6)}});
    return Json{{"verdict", to_string(r.certificate.verdict)},
                {"certificate", certificate_document(r.certificate, p)},
                {"trace", {{"finite_class", r.finite_class}, {"center_index", r.center_index}, {"h1_class", r.h1_index}}},
                {"timings", timings}};
}

}  // namespace realpt
