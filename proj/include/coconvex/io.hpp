#ifndef COCONVEX_IO_HPP
#define COCONVEX_IO_HPP

#include <json.hpp>
#include <string>

#include "coconvex/checks.hpp"
#include "coconvex/solver.hpp"

namespace coconvex {

using Json = nlohmann::ordered_json;

// Schema tag stamped on every record.
inline constexpr const char* kSchemaTag = "coconvex/1";

Json cone_to_json(const Cone& cone);
Cone cone_from_json(const Json& j);

// Coconvex record: cone, omega and the stored support vector. Reading
// rebuilds the Wulff shape, so round-trips reproduce the cached geometry.
Json coconvex_to_json(const CCoconvexSet& a);
CCoconvexSet coconvex_from_json(const Json& j);

Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

// Solution record: coconvex record plus solver metadata.
Json solve_result_to_json(const SolveResult& r);

Json report_to_json(const CheckReport& r);
Json reports_to_json(const std::vector<CheckReport>& rs);

// Debug dump of a polytope: vertices and facets with measures.
Json polytope_to_json(const Polytope& p);

// Parses text, converting nlohmann diagnostics (with byte position) into
// ParseError.
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

// Writes via a temp file in the same directory followed by rename, so a
// crash never leaves a half-written record.
void write_file_atomic(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const Json& j);

}  // namespace coconvex

#endif
