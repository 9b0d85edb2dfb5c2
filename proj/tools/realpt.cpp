// Command-line front end: solve, verify, cohomology, fundamental-torus, corpus.
#include "realpt/certificate.hpp"
#include "realpt/errors.hpp"
#include "realpt/root_datum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace realpt;
namespace fs = std::filesystem;

namespace {

enum Exit : int { kRealPoint = 0, kFailed = 1, kInvalid = 2, kUnsupported = 3, kNoRealPoint = 10 };

struct SolveOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> conductor;
};

struct SolveOutcome {
    int exit = kInvalid;
    std::string message;
    std::optional<ProblemSpec> problem;
    std::optional<RunReport> report;
};

SolveOutcome run_solve(Json doc, const SolveOptions& opt) {
    SolveOutcome out;
    try {
        if (opt.conductor) doc["conductor"] = *opt.conductor;
        if (opt.seed) doc["options"]["seed"] = *opt.seed;
        out.problem = problem_from_json(doc);
        out.report = solve(*out.problem);
        out.exit = out.report->certificate.verdict == Verdict::RealPoint ? kRealPoint : kNoRealPoint;
    } catch (const ConductorError& e) {
        out.exit = kInvalid;
        out.message = std::string(e.what()) + "; rerun with --conductor " + std::to_string(e.required());
    } catch (const ParseError& e) {
        out.exit = kInvalid;
        out.message = std::string("parse error at ") + e.what();
    } catch (const ValidationError& e) {
        out.exit = kInvalid;
        out.message = std::string("invalid problem: ") + e.what();
    } catch (const UnsupportedError& e) {
        out.exit = kUnsupported;
        out.message = std::string("unsupported shape: ") + e.what();
    } catch (const Error& e) {
        out.exit = kInvalid;
        out.message = e.what();
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw ParseError(path, "cannot write file");
    os << text << '\n';
}

std::string group_name(const CohomologyGroup& g) {
    if (g.divisors.empty()) return "1";
    std::string s;
    for (const auto& d : g.divisors) s += (s.empty() ? "" : " x ") + std::string("Z/") + d.get_str();
    return s;
}

std::string point_text(const QuasiTorusPoint& p) {
    auto field = CycloField::make(p.required_conductor(2));
    auto values = p.realize(field);
    if (values.size() == 1) return values[0].to_string();
    std::string s = "(";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + values[i].to_string();
    return s + ")";
}

std::string matrix_text(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).get_str();
        s += "]";
    }
    return s + "]";
}

DiagramInvolution parse_involution(const std::string& text, const IntMatrix& cartan) {
    auto all = diagram_involutions(cartan);
    if (text == "id") return all.front();
    if (text == "flip") {
        if (all.size() != 2) throw ValidationError("'flip' needs exactly one nontrivial diagram involution; give a permutation instead");
        return all[1];
    }
    std::vector<std::size_t> perm;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("involution must be id, flip, or a comma-separated permutation, got '" + text + "'");
        perm.push_back(std::stoul(item));
    }
    return DiagramInvolution(perm, cartan);
}

int cmd_solve(const std::string& path, const SolveOptions& opt, bool trace, const std::string& cert_path) {
    Json doc;
    try {
        doc = load_json_file(path);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << '\n';
        return kInvalid;
    }
    auto out = run_solve(doc, opt);
    if (!out.report) {
        std::cerr << out.message << '\n';
        return out.exit;
    }
    const Certificate& c = out.report->certificate;
    std::cout << "verdict: " << to_string(c.verdict) << '\n';
    if (c.verdict == Verdict::RealPoint) {
        std::cout << "g01: " << c.g01->to_string() << '\n' << "real point: " << kRealPointStatement << '\n';
    } else {
        std::cout << "stage: " << c.failing_stage << '\n' << "obstruction: " << c.obstruction << '\n';
    }
    if (trace) std::cout << run_report_json(*out.report, *out.problem).dump(2) << '\n';
    if (!cert_path.empty()) write_file(cert_path, certificate_document(c, *out.problem).dump(2));
    return out.exit;
}

int cmd_verify(const std::string& path) {
    Json doc;
    try {
        doc = load_json_file(path);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.what() << '\n';
        return kInvalid;
    }
    auto check = verify_certificate_document(doc);
    for (const auto& p : check.passed) std::cout << "pass: " << p << '\n';
    for (const auto& f : check.failures) std::cout << "FAIL: " << f << '\n';
    std::cout << (check.ok ? "certificate verified" : "certificate rejected") << '\n';
    return check.ok ? 0 : kFailed;
}

int cmd_cohomology(const std::string& descriptor, int degree) {
    try {
        Json doc = fs::exists(descriptor) ? load_json_file(descriptor) : parse_json_text(descriptor, "module");
        GammaModule m = module_from_json(doc);
        CohomologyGroup g;
        if (degree == 2) g = tate_h0(m);
        else if (degree == 1) g = tate_hminus1(m);
        else throw ValidationError("degree must be 1 or 2");
        std::cout << group_name(g) << "; reps: ";
        for (std::size_t i = 0; i < g.representatives.size(); ++i)
            std::cout << (i ? ", " : "") << point_text(g.representatives[i]);
        std::cout << '\n';
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    }
}

int cmd_fundamental_torus(const std::string& dynkin, const std::string& involution, bool adjoint) {
    try {
        IntMatrix cartan = cartan_matrix(dynkin);
        BasedRootDatum datum = adjoint ? BasedRootDatum::adjoint(cartan) : BasedRootDatum::simply_connected(cartan);
        DiagramInvolution nu = parse_involution(involution, cartan);
        auto d = fundamental_torus_decomposition(datum, nu);
        auto r = verify_r_perp(datum, nu);
        std::cout << "m=" << d.m << ", n=" << d.n << '\n'
                  << "adapted basis: " << matrix_text(d.basis_change) << '\n'
                  << "block involution: " << matrix_text(d.block) << '\n'
                  << "R-perp check: " << (r.ok ? "pass" : "FAIL") << " (" << r.witnessed << " roots)" << '\n';
        return r.ok ? 0 : kFailed;
    } catch (const UnsupportedError& e) {
        std::cerr << e.what() << '\n';
        return kUnsupported;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    }
}

int cmd_corpus(std::string dir, const SolveOptions& opt) {
    if (dir.empty()) {
        const char* env = std::getenv("REALPT_CORPUS");
        dir = env ? env : "corpus";
    }
    // Files that cannot carry their own "expected" block (unparsable ones) are listed here.
    const fs::path manifest = fs::path(dir) / "expected-exit.json";
    const Json exits = fs::exists(manifest) ? load_json_file(manifest.string()) : Json::object();
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json" && e.path() != manifest) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "no corpus files in " << dir << '\n';
        return kInvalid;
    }
    std::size_t failed = 0;
    for (const auto& f : files) {
        std::string reason;
        const std::string name = f.filename().string();
        Json doc;
        try {
            doc = load_json_file(f.string());
        } catch (const ParseError& e) {
            if (exits.value(name, -1) != kInvalid) reason = std::string("unexpected parse error at ") + e.what();
            std::cout << (reason.empty() ? "PASS " : "FAIL ") << name << (reason.empty() ? "" : ": " + reason) << '\n';
            failed += !reason.empty();
            continue;
        }
        try {
            const Json expected = doc.value("expected", Json::object());
            auto out = run_solve(doc, opt);
            const int want = expected.value("exit", 0);
            if (out.exit != want) {
                reason = "exit " + std::to_string(out.exit) + ", expected " + std::to_string(want) + " " + out.message;
            } else if (out.report) {
                const Certificate& c = out.report->certificate;
                auto cert = certificate_document(c, *out.problem);
                if (!verify_certificate_document(cert).ok) reason = "certificate does not verify";
                else if (expected.contains("g01") && (!c.g01 || *c.g01 != matrix_from_json(expected["g01"], out.problem->field(), "expected.g01")))
                    reason = "g01 differs from the expected value";
                else if (expected.contains("obstruction") && c.obstruction != expected["obstruction"].get<std::string>())
                    reason = "obstruction '" + c.obstruction + "' differs";
            }
        } catch (const Error& e) {
            reason = e.what();
        }
        std::cout << (reason.empty() ? "PASS " : "FAIL ") << f.filename().string() << (reason.empty() ? "" : ": " + reason) << '\n';
        failed += !reason.empty();
    }
    std::cout << files.size() - failed << "/" << files.size() << " corpus files passed" << '\n';
    return failed ? kFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real points of homogeneous spaces, with exact certificates"};
    app.require_subcommand(1);
    SolveOptions opt;
    std::uint64_t seed = 0;
    std::int64_t conductor = 0;
    bool trace = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Seed for sampled words and random witness candidates");
        sub->add_option("--conductor", conductor, "Override the cyclotomic conductor m");
        sub->add_flag("--trace", trace, "Print the run report with stage trace and timings");
    };

    std::string path, cert_path;
    auto* solve_cmd = app.add_subcommand("solve", "Decide whether the problem's homogeneous space has a real point");
    solve_cmd->add_option("problem", path, "Problem file (JSON)")->required();
    solve_cmd->add_option("--certificate", cert_path, "Write the certificate document here");
    add_common(solve_cmd);

    std::string cert;
    auto* verify_cmd = app.add_subcommand("verify", "Re-verify a certificate document independently");
    verify_cmd->add_option("certificate", cert, "Certificate file (JSON)")->required();

    std::string module;
    int degree = 2;
    auto* coh_cmd = app.add_subcommand("cohomology", "Tate cohomology of a Gamma-module");
    coh_cmd->add_option("module", module, "Module JSON (file or inline): {\"involution\": [[..]], \"relations\": [[..]]}")->required();
    coh_cmd->add_option("--degree", degree, "1 for H^1, 2 for H^2")->check(CLI::IsMember({1, 2}));

    std::string dynkin, involution = "id";
    bool adjoint = false;
    auto* ft_cmd = app.add_subcommand("fundamental-torus", "Decompose the fundamental torus of a simply connected group");
    ft_cmd->add_option("dynkin", dynkin, "Dynkin type, e.g. A2 or A1xB2")->required();
    ft_cmd->add_option("--involution", involution, "id, flip, or a permutation such as 1,0");
    ft_cmd->add_flag("--adjoint", adjoint, "Use the adjoint datum (rejected)");

    std::string corpus_dir;
    auto* corpus_cmd = app.add_subcommand("corpus", "Run every corpus file against its expected outcome");
    corpus_cmd->add_option("dir", corpus_dir, "Corpus directory (default $REALPT_CORPUS or ./corpus)");
    add_common(corpus_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kInvalid;
    }
    if (seed) opt.seed = seed;
    if (conductor) opt.conductor = conductor;
    try {
        if (*solve_cmd) return cmd_solve(path, opt, trace, cert_path);
        if (*verify_cmd) return cmd_verify(cert);
        if (*coh_cmd) return cmd_cohomology(module, degree);
        if (*ft_cmd) return cmd_fundamental_torus(dynkin, involution, adjoint);
        if (*corpus_cmd) return cmd_corpus(corpus_dir, opt);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}
