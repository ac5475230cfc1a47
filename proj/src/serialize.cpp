#include "plrev/serialize.hpp"

namespace plrev {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, (path.empty() ? "<root>" : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(join(path, key), "missing field");
  return *it;
}

const Json& array_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& a = field(j, key, path);
  if (!a.is_array()) fail(join(path, key), "expected an array");
  return a;
}

Rational read_rational(const Json& j, const std::string& path, bool canonical = true) {
  if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>(), canonical);
  } catch (const Error& e) {
    fail(path, e.message());
  }
}

std::optional<Rational> read_optional(const Json& j, const std::string& key,
                                      const std::string& path) {
  const Json& v = field(j, key, path);
  if (v.is_null()) return std::nullopt;
  return read_rational(v, join(path, key));
}

int read_sign(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.get<int>() != 1 && j.get<int>() != -1))
    fail(path, "expected 1 or -1");
  return j.get<int>();
}

bool read_bool(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) return false;
  if (!it->is_boolean()) fail(join(path, key), "expected a boolean");
  return it->get<bool>();
}

void check_version(const Json& doc) {
  if (!doc.is_object()) fail("", "expected an object");
  auto it = doc.find("format_version");
  if (it != doc.end() && (!it->is_number_integer() || it->get<int>() != kFormatVersion))
    fail("format_version", "unsupported format version");
}

std::vector<Vertex> read_vertices(const Json& doc, const std::string& path, bool canonical) {
  const Json& vs = array_field(doc, "vertices", path);
  if (vs.empty()) fail(join(path, "vertices"), "empty vertex list");
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = index(join(path, "vertices"), i);
    out.push_back({read_rational(field(vs[i], "x", p), join(p, "x"), canonical),
                   read_rational(field(vs[i], "y", p), join(p, "y"), canonical)});
  }
  return out;
}

Json vertices_json(const std::vector<Vertex>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back({{"x", to_string(v.x)}, {"y", to_string(v.y)}});
  return a;
}

Json circle_body(const PLCircleMap& f) {
  return {{"degree", f.degree()}, {"vertices", vertices_json(f.vertices())}};
}

PLCircleMap circle_from(const Json& doc, const std::string& path, bool normalize) {
  const int deg = read_sign(field(doc, "degree", path), join(path, "degree"));
  auto vs = read_vertices(doc, path, !normalize);
  try {
    return normalize ? PLCircleMap::normalize(deg, std::move(vs))
                     : PLCircleMap::from_canonical(deg, std::move(vs));
  } catch (const Error& e) {
    fail(join(path, "vertices"), e.message());
  }
}

Json interval_body(const PLIntervalMap& m) {
  return {{"vertices", vertices_json(m.vertices())},
          {"unbounded_below", m.unbounded_below()},
          {"unbounded_above", m.unbounded_above()}};
}

PLIntervalMap interval_from(const Json& doc, const std::string& path) {
  auto vs = read_vertices(doc, path, true);
  try {
    return PLIntervalMap(std::move(vs), read_bool(doc, "unbounded_below", path),
                         read_bool(doc, "unbounded_above", path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(join(path, "vertices"), e.message());
  }
}

Json optional_json(const std::optional<Rational>& q) {
  return q ? Json(to_string(*q)) : Json(nullptr);
}

Json interval_json(const Interval& I) { return Json::array({to_string(I.lo), to_string(I.hi)}); }

Interval read_interval(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [lo, hi]");
  return {read_rational(j[0], index(path, 0)), read_rational(j[1], index(path, 1))};
}

Json node_json(const LazyMap& m) {
  Json out;
  switch (m.kind()) {
    case LazyMap::Kind::Finite: {
      out["kind"] = "finite";
      const auto& f = m.finite();
      if (const auto* c = std::get_if<PLCircleMap>(&f)) {
        out["circle"] = circle_body(*c);
      } else if (const auto* i = std::get_if<PLIntervalMap>(&f)) {
        out["interval"] = interval_body(*i);
      } else {
        const auto& l = std::get<LiftMap>(f);
        out["lift"] = circle_body(l.map);
        out["shift"] = l.shift.get_str();
      }
      break;
    }
    case LazyMap::Kind::Compose: {
      out["kind"] = "compose";
      Json maps = Json::array();
      for (const auto& c : m.children()) maps.push_back(node_json(c));
      out["maps"] = std::move(maps);
      break;
    }
    case LazyMap::Kind::Inverse:
      out["kind"] = "inverse";
      out["map"] = node_json(m.children().at(0));
      break;
    case LazyMap::Kind::FD: {
      const auto& d = m.fd_data();
      out["kind"] = "fd";
      out["v"] = node_json(*d.v);
      out["lo"] = optional_json(d.lo);
      out["hi"] = optional_json(d.hi);
      out["basepoint"] = to_string(d.basepoint);
      break;
    }
    case LazyMap::Kind::Glue: {
      out["kind"] = "glue";
      out["space"] = m.space() == Space::Circle ? "circle" : "line";
      Json pieces = Json::array();
      for (const auto& p : m.pieces()) {
        Json pj;
        pj["domain"] = interval_json(p.domain);
        if (p.is_point()) {
          pj["value"] = to_string(p.value);
        } else {
          pj["image"] = interval_json(p.image);
          pj["orientation"] = p.orientation;
          pj["map"] = node_json(*p.map);
        }
        pieces.push_back(std::move(pj));
      }
      out["pieces"] = std::move(pieces);
      break;
    }
  }
  return out;
}

LazyMap node_from(const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  if (!kind.is_string()) fail(join(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "finite") {
      if (j.contains("circle")) return LazyMap(circle_from(j["circle"], join(path, "circle"), false));
      if (j.contains("interval")) return LazyMap(interval_from(j["interval"], join(path, "interval")));
      if (j.contains("lift")) {
        const Json& shift = field(j, "shift", path);
        if (!shift.is_string()) fail(join(path, "shift"), "expected an integer string");
        const Rational s = read_rational(shift, join(path, "shift"));
        if (s.get_den() != 1) fail(join(path, "shift"), "expected an integer");
        return LazyMap(LiftMap{circle_from(j["lift"], join(path, "lift"), false), s.get_num()});
      }
      fail(path, "finite node needs one of circle, interval, lift");
    }
    if (k == "compose") {
      const Json& maps = array_field(j, "maps", path);
      std::vector<LazyMap> children;
      for (std::size_t i = 0; i < maps.size(); ++i)
        children.push_back(node_from(maps[i], index(join(path, "maps"), i)));
      if (children.empty()) fail(join(path, "maps"), "empty composition");
      return LazyMap::compose(std::move(children));
    }
    if (k == "inverse") return node_from(field(j, "map", path), join(path, "map")).inverse();
    if (k == "fd") {
      return LazyMap::fd(node_from(field(j, "v", path), join(path, "v")),
                         read_optional(j, "lo", path), read_optional(j, "hi", path),
                         read_rational(field(j, "basepoint", path), join(path, "basepoint")));
    }
    if (k == "glue") {
      const Json& sp = field(j, "space", path);
      if (sp != "circle" && sp != "line") fail(join(path, "space"), "expected circle or line");
      const Json& ps = array_field(j, "pieces", path);
      std::vector<GluePiece> pieces;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string p = index(join(path, "pieces"), i);
        const Interval dom = read_interval(field(ps[i], "domain", p), join(p, "domain"));
        if (ps[i].contains("value")) {
          pieces.push_back(point_piece(dom.lo, read_rational(ps[i]["value"], join(p, "value"))));
        } else {
          pieces.push_back(map_piece(
              dom, node_from(field(ps[i], "map", p), join(p, "map")),
              read_interval(field(ps[i], "image", p), join(p, "image")),
              read_sign(field(ps[i], "orientation", p), join(p, "orientation"))));
        }
      }
      return LazyMap::glue(sp == "circle" ? Space::Circle : Space::Line, std::move(pieces));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(path, e.message());
  }
  fail(join(path, "kind"), "unknown node kind '" + k + "'");
}


Json component_json(const FixedComponent& c) {
  if (!c.is_arc()) return {{"kind", "point"}, {"at", to_string(c.a)}};
  return {{"kind", "arc"}, {"at", Json::array({to_string(c.a), to_string(c.b)})}};
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Json versioned(const Json& body) {
  Json out{{"format_version", kFormatVersion}};
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

Json map_to_json(const PLCircleMap& f) { return versioned(circle_body(f)); }

PLCircleMap map_from_json(const Json& doc, bool normalize) {
  check_version(doc);
  return circle_from(doc, "", normalize);
}

Json interval_map_to_json(const PLIntervalMap& m) { return versioned(interval_body(m)); }

PLIntervalMap interval_map_from_json(const Json& doc) {
  check_version(doc);
  return interval_from(doc, "");
}

Json lazy_to_json(const LazyMap& m) { return versioned(node_json(m)); }

LazyMap lazy_from_json(const Json& doc) {
  check_version(doc);
  return node_from(doc, "");
}

Json any_to_json(const AnyMap& m) {
  if (const auto* f = std::get_if<PLCircleMap>(&m)) return map_to_json(*f);
  return lazy_to_json(std::get<LazyMap>(m));
}

AnyMap any_from_json(const Json& doc, bool normalize) {
  check_version(doc);
  if (!doc.contains("kind")) return map_from_json(doc, normalize);
  if (doc["kind"] == "finite" && doc.contains("circle"))
    return circle_from(doc["circle"], "circle", normalize);
  return lazy_from_json(doc);
}

Json word_to_json(const SignatureWord& w) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < w.m(); ++i) {
    entries.push_back(component_json(w.components[i]));
    const auto& I = w.intervals[i];
    entries.push_back({{"sign", I.sign},
                       {"interval", Json::array({to_string(I.lo), to_string(I.hi)})}});
  }
  return versioned({{"identity", w.identity}, {"level", w.level.get_str()}, {"word", entries}});
}

Json fixed_set_to_json(const FixedSet& s) {
  Json comps = Json::array();
  for (const auto& c : s.components) comps.push_back(component_json(c));
  return versioned({{"whole_circle", s.whole_circle}, {"components", comps}});
}

Json rho_to_json(const RotationNumberResult& r) {
  if (!r.rho) return versioned({{"unknown_bound", r.bound}});
  return versioned({{"rho", to_string(*r.rho)}});
}

Json report_to_json(const VerificationReport& r) {
  return {{"claim", r.claim},
          {"passed", r.passed()},
          {"all_exact", r.all_exact},
          {"proof_grade", r.proof_grade},
          {"checked_points", r.checked_points},
          {"fundamental_domain_checked", r.fundamental_domain_checked},
          {"counterexample", optional_json(r.counterexample)}};
}

Json witness_to_json(const Witness& w) {
  return {{"claims", w.claims}, {"map", any_to_json(w.map)}, {"verification", report_to_json(w.report)}};
}

Json decision_to_json(const Decision& d) {
  Json out = versioned({{"question", d.question},
                           {"verdict", std::string(to_string(d.verdict))},
                           {"reason", d.reason}});
  out["witness"] = d.witness ? any_to_json(d.witness->map) : Json(nullptr);
  out["claims"] = d.witness ? Json(d.witness->claims) : Json::array();
  out["verification"] = d.witness ? report_to_json(d.witness->report) : Json(nullptr);
  if (d.plus_witness) out["plus_witness"] = witness_to_json(*d.plus_witness);
  if (d.bound) out["unknown_bound"] = *d.bound;
  return out;
}

Json factorization_to_json(const Factorization& f) {
  Json factors = Json::array();
  for (const auto& w : f.factors) factors.push_back(witness_to_json(w));
  Json out = versioned({{"length", f.factors.size()},
                           {"factors", factors},
                           {"product_check", report_to_json(f.product_check)}});
  if (f.x) out["x"] = to_string(*f.x);
  if (f.y) out["y"] = to_string(*f.y);
  return out;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": malformed JSON");
  }
}

}  // namespace plrev
