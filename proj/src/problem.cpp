#include "toricq/problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace toricq {

namespace {

using nlohmann::json;

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ProblemError(path, what); }

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path.empty() ? "/" : path, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

const json& expect_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list");
  return v;
}

Integer to_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Integer(v.dump());
  if (v.is_string()) {
    Integer z;
    if (z.set_str(v.get<std::string>(), 10) == 0) return z;
  }
  fail(path, "expected an integer");
}

Rational to_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(to_integer(v, path));
  if (v.is_string()) {
    Rational q;
    if (q.set_str(v.get<std::string>(), 10) == 0 && q.get_den() != 0) {
      q.canonicalize();
      return q;
    }
  }
  fail(path, "expected an integer or a fraction \"p/q\"");
}

IntVector to_vector(const json& v, const std::string& path, std::size_t len) {
  expect_array(v, path);
  if (v.size() != len)
    fail(path, "expected " + std::to_string(len) + " entries, found " + std::to_string(v.size()));
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_integer(v[i], path + "/" + std::to_string(i)));
  return out;
}

std::size_t to_index(const json& v, const std::string& path, std::size_t bound, const char* what) {
  const Integer z = to_integer(v, path);
  if (z < 0 || z >= static_cast<unsigned long>(bound))
    fail(path, std::string(what) + " index " + z.get_str() + " out of range (0.." +
                   std::to_string(bound == 0 ? 0 : bound - 1) + ")");
  return z.get_ui();
}

RaySet to_ray_set(const json& v, const std::string& path, std::size_t num_rays) {
  expect_array(v, path);
  RaySet out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_index(v[i], path + "/" + std::to_string(i), num_rays, "ray"));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) fail(path, "repeated ray index");
  return out;
}

std::size_t cone_of(const Fan& f, const json& v, const std::string& path) {
  const RaySet rs = to_ray_set(v, path, f.rays().size());
  const auto idx = f.index_of(rs);
  if (!idx) fail(path, "not a cone of the fan");
  return *idx;
}

ConeSet parse_selection(const Fan& f, const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object with \"cones\" or \"generated_by\"");
  const bool exact = v.contains("cones");
  const bool gen = v.contains("generated_by");
  if (exact == gen) fail(path, "give exactly one of \"cones\" and \"generated_by\"");
  const std::string sub = path + (exact ? "/cones" : "/generated_by");
  const json& list = expect_array(v.at(exact ? "cones" : "generated_by"), sub);
  std::vector<std::size_t> cones;
  for (std::size_t i = 0; i < list.size(); ++i) cones.push_back(cone_of(f, list[i], sub + "/" + std::to_string(i)));
  if (gen) return face_closure(f, cones);
  ConeSet s;
  for (auto c : cones) s.insert(c);
  if (!is_face_closed(f, s)) fail(sub, "selection is not closed under taking faces");
  return s;
}

Section parse_section(const json& v, const std::string& path, std::size_t n) {
  if (!v.is_object() || v.size() != 1 || !(v.contains("monomial") || v.contains("polynomial")))
    fail(path, "expected {\"monomial\": [...]} or {\"polynomial\": [...]}");
  auto exponents = [&](const json& e, const std::string& p) {
    IntVector a = to_vector(e, p, n);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] < 0) fail(p + "/" + std::to_string(i), "negative exponent");
    return a;
  };
  if (v.contains("monomial")) return MonomialSection{exponents(v.at("monomial"), path + "/monomial"), {}};
  const std::string p = path + "/polynomial";
  const json& terms = expect_array(v.at("polynomial"), p);
  if (terms.empty()) fail(p, "polynomial has no terms");
  PolynomialSection s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = p + "/" + std::to_string(i);
    if (!terms[i].is_array() || terms[i].size() != 2) fail(tp, "expected [coefficient, exponents]");
    const Rational c = to_rational(terms[i][0], tp + "/0");
    if (c == 0) fail(tp + "/0", "zero coefficient");
    s.terms.emplace_back(c, exponents(terms[i][1], tp + "/1"));
  }
  return s;
}

}  // namespace

const ConeSet& ProblemFile::selection(const std::string& name) const {
  const auto it = selections.find(name);
  if (it == selections.end()) throw ProblemError("/selections", "unknown selection \"" + name + "\"");
  return it->second;
}

ProblemFile parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "syntax error");
  }
  if (!doc.is_object()) fail("/", "expected an object at top level");
  for (const auto& [key, value] : doc.items())
    if (key != "format" && key != "rank" && key != "rays" && key != "max_cones" && key != "subtorus" &&
        key != "symmetries" && key != "selections" && key != "sections")
      fail("/" + key, "unknown field");

  ProblemFile pf;
  const Integer version = to_integer(field(doc, "", "format"), "/format");
  if (version != kProblemFormatVersion)
    fail("/format", "unsupported format version " + version.get_str() + " (expected " +
                        std::to_string(kProblemFormatVersion) + ")");
  const Integer rank = to_integer(field(doc, "", "rank"), "/rank");
  if (rank < 0 || rank > 16) fail("/rank", "rank must be between 0 and 16");
  const std::size_t d = rank.get_ui();

  const json& rays = expect_array(field(doc, "", "rays"), "/rays");
  std::vector<IntVector> ray_list;
  for (std::size_t i = 0; i < rays.size(); ++i) ray_list.push_back(to_vector(rays[i], "/rays/" + std::to_string(i), d));
  const json& cones = expect_array(field(doc, "", "max_cones"), "/max_cones");
  std::vector<RaySet> cone_list;
  for (std::size_t i = 0; i < cones.size(); ++i)
    cone_list.push_back(to_ray_set(cones[i], "/max_cones/" + std::to_string(i), ray_list.size()));
  try {
    pf.fan = std::make_shared<const Fan>(d, ray_list, cone_list);
  } catch (const std::exception& e) {
    fail("/max_cones", e.what());
  }
  const FanReport rep = validate_fan(*pf.fan);
  if (!rep.valid) {
    std::string where = "/max_cones";
    if (rep.witness) where += "/" + std::to_string(rep.witness->first);
    fail(where, "not a fan: " + (rep.issues.empty() ? std::string("invalid") : rep.issues.front()));
  }
  const Fan& f = *pf.fan;

  if (doc.contains("subtorus")) {
    const json& gens = expect_array(doc.at("subtorus"), "/subtorus");
    for (std::size_t i = 0; i < gens.size(); ++i)
      pf.subtorus.push_back(to_vector(gens[i], "/subtorus/" + std::to_string(i), d));
  }

  if (doc.contains("symmetries")) {
    const json& mats = expect_array(doc.at("symmetries"), "/symmetries");
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const std::string p = "/symmetries/" + std::to_string(i);
      expect_array(mats[i], p);
      if (mats[i].size() != d) fail(p, "expected " + std::to_string(d) + " rows");
      std::vector<IntVector> rows;
      for (std::size_t r = 0; r < d; ++r) rows.push_back(to_vector(mats[i][r], p + "/" + std::to_string(r), d));
      const IntMatrix m = IntMatrix::from_rows(d, rows);
      if (!as_fan_automorphism(f, m)) fail(p, "matrix is not an automorphism of the fan");
      pf.symmetries.push_back(m);
    }
  }

  pf.selections["all"] = f.all_cones();
  pf.selections["empty"] = ConeSet{};
  if (doc.contains("selections")) {
    const json& sel = doc.at("selections");
    if (!sel.is_object()) fail("/selections", "expected an object of named selections");
    for (const auto& [name, value] : sel.items()) {
      if (name == "all" || name == "empty") fail("/selections/" + name, "reserved selection name");
      pf.selections[name] = parse_selection(f, value, "/selections/" + name);
    }
  }

  if (doc.contains("sections")) {
    const json& secs = doc.at("sections");
    if (!secs.is_object()) fail("/sections", "expected an object of named section families");
    for (const auto& [name, value] : secs.items()) {
      const std::string p = "/sections/" + name;
      if (!value.is_object()) fail(p, "expected an object");
      SectionFamily fam;
      const json& s = field(value, p, "selection");
      if (!s.is_string()) fail(p + "/selection", "expected a selection name");
      fam.selection = s.get<std::string>();
      if (!pf.selections.count(fam.selection)) fail(p + "/selection", "unknown selection \"" + fam.selection + "\"");
      const json& members = expect_array(field(value, p, "members"), p + "/members");
      for (std::size_t i = 0; i < members.size(); ++i)
        fam.members.push_back(parse_section(members[i], p + "/members/" + std::to_string(i), f.rays().size()));
      pf.sections[name] = std::move(fam);
    }
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace toricq
