#include "realpt/serialize.hpp"

#include "realpt/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace realpt {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where, std::string("missing field '") + key + "'");
    return *it;
}

std::size_t size_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) throw ParseError(where + "." + key, "expected a positive integer");
    return v.get<std::size_t>();
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_string()) throw ParseError(where + "." + key, "expected a string");
    return v.get<std::string>();
}

Rational parse_rational(const std::string& s, const std::string& where) {
    try {
        Rational r(s);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError(where, "bad rational '" + s + "'");
    }
}

std::vector<CMatrix> matrix_list(const Json& j, const FieldPtr& field, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected a list of matrices");
    std::vector<CMatrix> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], field, where + "[" + std::to_string(i) + "]"));
    return out;
}

void check_size(const CMatrix& m, std::size_t n, const std::string& where) {
    if (m.dim() != n) throw ParseError(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
}

}  // namespace

CycloNumber parse_cyclo(const std::string& text, const FieldPtr& field, const std::string& where) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError(where, "empty number");
    const std::int64_t m = field->conductor();
    CycloNumber out(field);
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw ParseError(where, "expected '+' or '-' in '" + text + "'");
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') {
            if (s[end] == '^' && end + 1 < s.size() && s[end + 1] == '-') ++end;
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw ParseError(where, "empty term in '" + text + "'");
        Rational coeff = 1;
        std::string atom = term;
        auto star = term.find('*');
        if (star != std::string::npos) {
            coeff = parse_rational(term.substr(0, star), where);
            atom = term.substr(star + 1);
        } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            out += CycloNumber(field, parse_rational(term, where) * sign);
            continue;
        }
        std::int64_t k = 0;
        if (atom == "i") {
            if (m % 4 != 0) throw ParseError(where, "i needs a conductor divisible by 4, got " + std::to_string(m));
            k = m / 4;
        } else if (atom == "z") {
            k = 1;
        } else if (atom.rfind("z^", 0) == 0) {
            try {
                std::size_t used = 0;
                k = std::stoll(atom.substr(2), &used);
                if (used != atom.size() - 2) throw std::invalid_argument(atom);
            } catch (const std::exception&) {
                throw ParseError(where, "bad exponent in '" + atom + "'");
            }
        } else {
            throw ParseError(where, "unknown atom '" + atom + "'");
        }
        out += CycloNumber::zeta(field, k) * CycloNumber(field, coeff * sign);
    }
    return out;
}

Json to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const AntiRegularMap& f) {
    Json j{{"mode", to_string(f.mode())}};
    if (f.mode() != InvolutionMode::Conjugation) j["twist"] = to_json(f.twist());
    return j;
}

Json to_json(const Ambient& g) {
    Json j{{"group", to_string(g.kind)}};
    if (g.kind == AmbientKind::Product) {
        j["factors"] = Json::array();
        for (const auto& b : g.blocks) j["factors"].push_back(to_json(b));
        return j;
    }
    j["n"] = g.n;
    j["involution"] = to_json(g.tau);
    if (g.kind == AmbientKind::Torus) {
        j["exponents"] = to_json(g.torus->exponents());
        j["relations"] = to_json(g.torus->relations());
    }
    if (g.kind == AmbientKind::Finite) {
        j["elements"] = Json::array();
        for (const auto& x : g.elements) j["elements"].push_back(to_json(x));
    }
    return j;
}

Json to_json(const StabilizerSpec& h) {
    Json j = Json::object();
    if (!h.finite.empty()) {
        j["finite"] = Json::array();
        for (const auto& x : h.finite) j["finite"].push_back(to_json(x));
    }
    if (h.torus) j["torus"] = Json{{"exponents", to_json(h.torus->exponents())}, {"relations", to_json(h.torus->relations())}};
    if (!h.unipotent.empty()) {
        j["unipotent"] = Json::array();
        for (const auto& x : h.unipotent) j["unipotent"].push_back(to_json(x));
    }
    if (h.reductive) {
        Json r{{"name", h.reductive->name}};
        if (h.reductive->pinning_hint) r["pinning_hint"] = to_json(*h.reductive->pinning_hint);
        if (h.reductive->torus_hint) r["torus_hint"] = to_json(*h.reductive->torus_hint);
        j["reductive"] = r;
    }
    return j;
}

Json to_json(const ProblemSpec& p) {
    return Json{{"conductor", p.conductor},
                {"ambient", to_json(p.ambient)},
                {"stabilizer", to_json(p.stabilizer)},
                {"g_y0", to_json(p.g_y0)},
                {"options", {{"seed", p.seed}}}};
}

Json to_json(const GammaModule& m) { return Json{{"relations", to_json(m.relations())}, {"involution", to_json(m.involution())}}; }

CMatrix matrix_from_json(const Json& j, const FieldPtr& field, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where, "expected a non-empty square array of rows");
    const std::size_t n = j.size();
    CMatrix m = CMatrix::identity(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != n) throw ParseError(row, "expected a row of length " + std::to_string(n));
        for (std::size_t k = 0; k < n; ++k) {
            const std::string cell = row + "[" + std::to_string(k) + "]";
            const Json& v = j[i][k];
            if (v.is_number_integer()) m(i, k) = CycloNumber(field, Rational(v.get<long>()));
            else if (v.is_string()) m(i, k) = parse_cyclo(v.get<std::string>(), field, cell);
            else throw ParseError(cell, "expected an integer or an exact string; floating point is not accepted");
        }
    }
    return m;
}

IntMatrix int_matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of integer rows");
    if (j.empty()) return IntMatrix(0, 0);
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    IntMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string row = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError(row, "rows must have equal length");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!j[i][k].is_number_integer()) throw ParseError(row + "[" + std::to_string(k) + "]", "expected an integer");
            m(i, k) = Integer(j[i][k].get<long>());
        }
    }
    return m;
}

AntiRegularMap involution_from_json(const Json& j, const FieldPtr& field, std::size_t n, const std::string& where) {
    InvolutionMode mode;
    try {
        mode = involution_mode_from_string(string_field(j, "mode", where));
    } catch (const ValidationError& e) {
        throw ParseError(where + ".mode", e.what());
    }
    CMatrix twist = CMatrix::identity(field, n);
    if (j.contains("twist")) {
        twist = matrix_from_json(j["twist"], field, where + ".twist");
        check_size(twist, n, where + ".twist");
    }
    try {
        return AntiRegularMap(mode, twist);
    } catch (const Error& e) {
        throw ParseError(where, e.what());
    }
}

Ambient ambient_from_json(const Json& j, const FieldPtr& field, const std::string& where) {
    const std::string group = string_field(j, "group", where);
    if (group == "product") {
        const Json& fs = require(j, "factors", where);
        if (!fs.is_array() || fs.empty()) throw ParseError(where + ".factors", "expected a non-empty list");
        std::vector<Ambient> blocks;
        for (std::size_t i = 0; i < fs.size(); ++i)
            blocks.push_back(ambient_from_json(fs[i], field, where + ".factors[" + std::to_string(i) + "]"));
        return Ambient::product(std::move(blocks));
    }
    const std::size_t n = size_field(j, "n", where);
    AntiRegularMap tau = involution_from_json(require(j, "involution", where), field, n, where + ".involution");
    if (group == "SL") return Ambient::special_linear(tau);
    if (group == "GL") return Ambient::general_linear(tau);
    if (group == "torus") {
        IntMatrix e = int_matrix_from_json(require(j, "exponents", where), where + ".exponents");
        IntMatrix b = j.contains("relations") ? int_matrix_from_json(j["relations"], where + ".relations") : IntMatrix(e.rows(), 0);
        try {
            return Ambient::diagonal_torus(tau, DiagonalQuasiTorus(e, b));
        } catch (const ValidationError& err) {
            throw ParseError(where, err.what());
        }
    }
    if (group == "finite") {
        auto elements = matrix_list(require(j, "elements", where), field, where + ".elements");
        for (std::size_t i = 0; i < elements.size(); ++i) check_size(elements[i], n, where + ".elements[" + std::to_string(i) + "]");
        try {
            return Ambient::finite(tau, std::move(elements));
        } catch (const ValidationError& err) {
            throw ParseError(where, err.what());
        }
    }
    throw ParseError(where + ".group", "unknown group '" + group + "' (expected SL, GL, torus, finite or product)");
}

StabilizerSpec stabilizer_from_json(const Json& j, const FieldPtr& field, std::size_t n, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "finite" && it.key() != "torus" && it.key() != "unipotent" && it.key() != "reductive")
            throw ParseError(where + "." + it.key(), "unknown stabilizer section");
    StabilizerSpec h = StabilizerSpec::trivial(field, n);
    if (j.contains("finite")) {
        h.finite = matrix_list(j["finite"], field, where + ".finite");
        for (std::size_t i = 0; i < h.finite.size(); ++i) check_size(h.finite[i], n, where + ".finite[" + std::to_string(i) + "]");
    }
    if (j.contains("torus")) {
        const std::string w = where + ".torus";
        IntMatrix e = int_matrix_from_json(require(j["torus"], "exponents", w), w + ".exponents");
        if (e.cols() != n) throw ParseError(w + ".exponents", "expected " + std::to_string(n) + " columns");
        IntMatrix b = j["torus"].contains("relations") ? int_matrix_from_json(j["torus"]["relations"], w + ".relations")
                                                       : IntMatrix(e.rows(), 0);
        try {
            h.torus = DiagonalQuasiTorus(e, b);
        } catch (const ValidationError& err) {
            throw ParseError(w, err.what());
        }
    }
    if (j.contains("unipotent")) {
        h.unipotent = matrix_list(j["unipotent"], field, where + ".unipotent");
        for (std::size_t i = 0; i < h.unipotent.size(); ++i) {
            const std::string w = where + ".unipotent[" + std::to_string(i) + "]";
            check_size(h.unipotent[i], n, w);
            if (!h.unipotent[i].is_nilpotent() || !h.unipotent[i].is_upper_triangular())
                throw ParseError(w, "expected a strictly upper-triangular matrix");
        }
    }
    if (j.contains("reductive")) {
        const std::string w = where + ".reductive";
        try {
            h.reductive = ReductivePart::named(string_field(j["reductive"], "name", w), field, n);
        } catch (const UnsupportedError&) {
            throw;
        } catch (const Error& err) {
            throw ParseError(w, err.what());
        }
        if (j["reductive"].contains("pinning_hint")) {
            h.reductive->pinning_hint = matrix_from_json(j["reductive"]["pinning_hint"], field, w + ".pinning_hint");
            check_size(*h.reductive->pinning_hint, n, w + ".pinning_hint");
        }
        if (j["reductive"].contains("torus_hint")) {
            h.reductive->torus_hint = matrix_from_json(j["reductive"]["torus_hint"], field, w + ".torus_hint");
            check_size(*h.reductive->torus_hint, n, w + ".torus_hint");
        }
    }
    return h;
}

ProblemSpec problem_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("problem", "expected an object");
    const Json& c = require(j, "conductor", "problem");
    if (!c.is_number_integer()) throw ParseError("conductor", "expected an integer");
    ProblemSpec p;
    p.conductor = c.get<std::int64_t>();
    FieldPtr field;
    try {
        field = CycloField::make(p.conductor);
    } catch (const ValidationError& e) {
        throw ParseError("conductor", e.what());
    }
    p.ambient = ambient_from_json(require(j, "ambient", "problem"), field);
    p.stabilizer = stabilizer_from_json(require(j, "stabilizer", "problem"), field, p.ambient.n);
    p.g_y0 = matrix_from_json(require(j, "g_y0", "problem"), field, "g_y0");
    check_size(p.g_y0, p.ambient.n, "g_y0");
    if (j.contains("options")) {
        const Json& o = j["options"];
        if (!o.is_object()) throw ParseError("options", "expected an object");
        if (o.contains("seed")) {
            if (!o["seed"].is_number_unsigned()) throw ParseError("options.seed", "expected a non-negative integer");
            p.seed = o["seed"].get<std::uint64_t>();
        }
    }
    return p;
}

GammaModule module_from_json(const Json& j, const std::string& where) {
    IntMatrix sigma = int_matrix_from_json(require(j, "involution", where), where + ".involution");
    IntMatrix b = j.contains("relations") ? int_matrix_from_json(j["relations"], where + ".relations") : IntMatrix(sigma.rows(), 0);
    try {
        return GammaModule(b, sigma);
    } catch (const ValidationError& e) {
        throw ParseError(where, e.what());
    }
}

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

}  // namespace realpt
