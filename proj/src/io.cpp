#include "coconvex/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace coconvex {

namespace {

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::SchemaError, where + ": expected a nonempty array of numbers");
  }
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::SchemaError, where + ": entry " + std::to_string(i) +
                                              " is not a number");
    }
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

const Json& require_field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::SchemaError, where + ": missing field \"" + key + "\"");
  }
  return *it;
}

void require_schema(const Json& j, const std::string& where) {
  const Json& tag = require_field(j, "schema", where);
  if (!tag.is_string() || tag.get<std::string>() != kSchemaTag) {
    throw Error(ErrorCode::SchemaError,
                where + ": field \"schema\" must be \"" + kSchemaTag + "\"");
  }
}

}  // namespace

Json cone_to_json(const Cone& cone) {
  Json j;
  j["schema"] = kSchemaTag;
  j["n"] = cone.dim();
  Json gens = Json::array();
  for (const Vec& g : cone.generators()) gens.push_back(vec_to_json(g));
  j["generators"] = std::move(gens);
  return j;
}

Cone cone_from_json(const Json& j) {
  const std::string where = "cone record";
  require_schema(j, where);
  const Json& nj = require_field(j, "n", where);
  if (!nj.is_number_integer()) {
    throw Error(ErrorCode::SchemaError, where + ": field \"n\" must be an integer");
  }
  const int n = nj.get<int>();
  const Json& gj = require_field(j, "generators", where);
  if (!gj.is_array() || gj.empty()) {
    throw Error(ErrorCode::SchemaError, where + ": field \"generators\" must be a nonempty array");
  }
  std::vector<Vec> gens;
  for (size_t i = 0; i < gj.size(); ++i) {
    gens.push_back(vec_from_json(gj[i], where + ": generators[" + std::to_string(i) + "]"));
  }
  try {
    return Cone::make(n, gens);
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, where + ": " + e.what());
  }
}

Json coconvex_to_json(const CCoconvexSet& a) {
  Json j;
  j["schema"] = kSchemaTag;
  j["cone"] = cone_to_json(a.cone());
  Json omega = Json::array();
  for (const Vec& u : a.omega().directions()) omega.push_back(vec_to_json(u));
  j["omega"] = std::move(omega);
  j["support"] = a.support();
  return j;
}

CCoconvexSet coconvex_from_json(const Json& j) {
  const std::string where = "coconvex record";
  require_schema(j, where);
  const Cone cone = cone_from_json(require_field(j, "cone", where));
  const Json& oj = require_field(j, "omega", where);
  if (!oj.is_array() || oj.empty()) {
    throw Error(ErrorCode::SchemaError, where + ": field \"omega\" must be a nonempty array");
  }
  std::vector<Vec> dirs;
  for (size_t i = 0; i < oj.size(); ++i) {
    dirs.push_back(vec_from_json(oj[i], where + ": omega[" + std::to_string(i) + "]"));
  }
  const Json& sj = require_field(j, "support", where);
  if (!sj.is_array() || sj.size() != oj.size()) {
    throw Error(ErrorCode::SchemaError,
                where + ": field \"support\" must be an array matching omega");
  }
  std::vector<double> support;
  for (size_t i = 0; i < sj.size(); ++i) {
    if (!sj[i].is_number()) {
      throw Error(ErrorCode::SchemaError,
                  where + ": support[" + std::to_string(i) + "] is not a number");
    }
    support.push_back(sj[i].get<double>());
  }
  try {
    const DirectionSet omega = DirectionSet::make(cone, dirs);
    return CCoconvexSet::wulff(cone, omega, support);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    throw Error(ErrorCode::SchemaError, where + ": " + e.what());
  }
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json j;
  j["schema"] = kSchemaTag;
  Json atoms = Json::array();
  for (const MeasureAtom& atom : mu.atoms()) {
    Json a;
    a["u"] = vec_to_json(atom.u);
    a["w"] = atom.w;
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

DiscreteMeasure measure_from_json(const Json& j) {
  const std::string where = "measure record";
  require_schema(j, where);
  const Json& aj = require_field(j, "atoms", where);
  if (!aj.is_array() || aj.empty()) {
    throw Error(ErrorCode::SchemaError, where + ": field \"atoms\" must be a nonempty array");
  }
  std::vector<MeasureAtom> atoms;
  for (size_t i = 0; i < aj.size(); ++i) {
    const std::string slot = where + ": atoms[" + std::to_string(i) + "]";
    const Json& wj = require_field(aj[i], "w", slot);
    if (!wj.is_number()) {
      throw Error(ErrorCode::SchemaError, slot + ": field \"w\" must be a number");
    }
    atoms.push_back({vec_from_json(require_field(aj[i], "u", slot), slot), wj.get<double>()});
  }
  return measure_from_atoms_unchecked(std::move(atoms));
}

Json solve_result_to_json(const SolveResult& r) {
  Json j = coconvex_to_json(r.solution);
  if (r.is_log) {
    j["p"] = "log";
  } else {
    j["p"] = r.p;
  }
  j["normalized"] = r.normalized;
  j["c"] = r.c;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  return j;
}

Json report_to_json(const CheckReport& r) {
  Json j;
  j["schema"] = kSchemaTag;
  j["name"] = r.name;
  j["left"] = r.left;
  j["right"] = r.right;
  j["slack"] = r.slack;
  j["pass"] = r.pass;
  j["equality"] = r.equality;
  j["dilation_detected"] = r.dilation_detected;
  if (!r.fingerprint.empty()) j["fingerprint"] = r.fingerprint;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.extras.empty()) {
    Json extras;
    for (const auto& [key, value] : r.extras) extras[key] = value;
    j["extras"] = std::move(extras);
  }
  return j;
}

Json reports_to_json(const std::vector<CheckReport>& rs) {
  Json j;
  j["schema"] = kSchemaTag;
  int passed = 0;
  Json items = Json::array();
  for (const CheckReport& r : rs) {
    passed += r.pass ? 1 : 0;
    items.push_back(report_to_json(r));
  }
  j["total"] = static_cast<int>(rs.size());
  j["passed"] = passed;
  j["all_pass"] = passed == static_cast<int>(rs.size());
  j["reports"] = std::move(items);
  return j;
}

Json polytope_to_json(const Polytope& p) {
  Json j;
  j["schema"] = kSchemaTag;
  Json verts = Json::array();
  for (const Vec& v : p.vertices()) verts.push_back(vec_to_json(v));
  j["vertices"] = std::move(verts);
  Json facets = Json::array();
  for (const Facet& f : p.facets()) {
    Json fj;
    fj["normal"] = vec_to_json(f.normal);
    fj["offset"] = f.offset;
    fj["vertices"] = f.vertex_indices;
    fj["measure"] = f.measure;
    facets.push_back(std::move(fj));
  }
  j["facets"] = std::move(facets);
  j["volume"] = p.volume();
  return j;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    size_t line = 1;
    size_t column = 1;
    const size_t stop = std::min(e.byte, text.size());
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << column << ": " << e.what();
    throw Error(ErrorCode::ParseError, msg.str());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::ParseError, path + ": cannot open for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path temp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::InvalidArgument, temp.string() + ": cannot open for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      std::remove(temp.string().c_str());
      throw Error(ErrorCode::InvalidArgument, temp.string() + ": write failed");
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::remove(temp.string().c_str());
    throw Error(ErrorCode::InvalidArgument, path + ": rename failed: " + ec.message());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace coconvex
