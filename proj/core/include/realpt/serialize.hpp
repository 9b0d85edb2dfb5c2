#pragma once

#include "realpt/gamma_module.hpp"
#include "realpt/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace realpt {

using Json = nlohmann::json;

/// Parses sums of terms "p/q", "p/q*z^k", "z", "i" (i = z^(m/4)); the inverse of CycloNumber::to_string.
CycloNumber parse_cyclo(const std::string& text, const FieldPtr& field, const std::string& where = "number");

Json to_json(const CMatrix& m);
Json to_json(const IntMatrix& m);
Json to_json(const AntiRegularMap& f);
Json to_json(const Ambient& g);
Json to_json(const StabilizerSpec& h);
Json to_json(const ProblemSpec& p);
Json to_json(const GammaModule& m);

/// `where` names the JSON path in error messages.
CMatrix matrix_from_json(const Json& j, const FieldPtr& field, const std::string& where);
IntMatrix int_matrix_from_json(const Json& j, const std::string& where);
AntiRegularMap involution_from_json(const Json& j, const FieldPtr& field, std::size_t n, const std::string& where);
Ambient ambient_from_json(const Json& j, const FieldPtr& field, const std::string& where = "ambient");
StabilizerSpec stabilizer_from_json(const Json& j, const FieldPtr& field, std::size_t n, const std::string& where = "stabilizer");
ProblemSpec problem_from_json(const Json& j);
GammaModule module_from_json(const Json& j, const std::string& where = "module");

/// Parses text, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json load_json_file(const std::string& path);

}  // namespace realpt
