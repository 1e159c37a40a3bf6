#include "finsch/io.hpp"

#include <json.hpp>

#include "finsch/errors.hpp"

namespace finsch {

using json = nlohmann::ordered_json;

const SheafModule* SpaceDocument::module(const std::string& name) const {
  for (const auto& [n, m] : modules)
    if (n == name) return &m;
  return nullptr;
}

const SpaceMap* SpaceDocument::map(const std::string& name) const {
  for (const auto& m : maps)
    if (m.name == name) return &m.map;
  return nullptr;
}

const NamedSections* SpaceDocument::section(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw ParseError("schema violation at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "/" + key, "missing");
  return *it;
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  std::vector<std::string> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "/" + std::to_string(i)));
  return out;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<int>();
}

Degree degree(const json& j, const std::string& path) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (!j.is_array()) schema(path, "expected an integer or an array of integers");
  Degree d;
  for (size_t i = 0; i < j.size(); ++i) d.push_back(integer(j[i], path + "/" + std::to_string(i)));
  return d;
}

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

AlgebraPtr algebra(const Field& field, const json& j, const std::string& path) {
  auto vars = strings(need(j, "vars", path), path + "/vars");
  std::vector<std::string> rels, inv;
  if (j.contains("relations")) rels = strings(j["relations"], path + "/relations");
  if (j.contains("invert")) inv = strings(j["invert"], path + "/invert");
  std::optional<std::vector<Degree>> weights;
  if (j.contains("weights")) {
    const json& w = j["weights"];
    if (!w.is_array() || w.size() != vars.size()) schema(path + "/weights", "expected one weight per variable");
    weights.emplace();
    for (size_t i = 0; i < w.size(); ++i) weights->push_back(degree(w[i], path + "/weights/" + std::to_string(i)));
  }
  return guarded(path, [&] { return LocAlgebra::from_strings(field, vars, rels, inv, weights); });
}

// {"images": {var: expr}, "extra_invert": [...], "flat": bool}
AlgHom hom(const AlgebraPtr& src, const AlgebraPtr& tgt, const json& j, const std::string& path) {
  const json& im = need(j, "images", path);
  if (!im.is_object()) schema(path + "/images", "expected an object");
  std::vector<Poly> images;
  for (const auto& v : src->vars()) {
    auto it = im.find(v);
    if (it == im.end()) schema(path + "/images/" + v, "missing image");
    std::string text = str(*it, path + "/images/" + v);
    images.push_back(guarded(path + "/images/" + v, [&] { return tgt->parse(text); }));
  }
  for (auto it = im.begin(); it != im.end(); ++it)
    if (std::find(src->vars().begin(), src->vars().end(), it.key()) == src->vars().end())
      schema(path + "/images/" + it.key(), "not a variable of the source");
  AlgHom h;
  if (j.contains("extra_invert")) {
    std::vector<Poly> extra;
    auto ex = strings(j["extra_invert"], path + "/extra_invert");
    for (size_t i = 0; i < ex.size(); ++i)
      extra.push_back(guarded(path + "/extra_invert/" + std::to_string(i), [&] { return src->parse(ex[i]); }));
    h = guarded(path, [&] { return AlgHom::localization(src, tgt, images, extra); });
  } else {
    h = guarded(path, [&] { return AlgHom::detect(src, tgt, images); });
  }
  if (j.contains("flat")) {
    if (!j["flat"].is_boolean()) schema(path + "/flat", "expected a boolean");
    if (j["flat"].get<bool>()) h = h.with_flat_certificate();
  }
  return h;
}

int point_index(const FinSpace& x, const json& j, const std::string& path) {
  std::string n = str(j, path);
  int i = x.index(n);
  if (i < 0) schema(path, "unknown point '" + n + "'");
  return i;
}

SpacePtr space_of(const json& j, const std::optional<Field>& override_field, const std::string& path) {
  Field field = override_field ? *override_field
                               : guarded(path + "/field", [&] { return Field::parse(str(need(j, "field", path), path + "/field")); });
  auto names = strings(need(j, "points", path), path + "/points");
  const json& st = need(j, "stalks", path);
  if (!st.is_object()) schema(path + "/stalks", "expected an object");
  std::vector<AlgebraPtr> stalks;
  for (const auto& n : names) {
    auto it = st.find(n);
    if (it == st.end()) schema(path + "/stalks/" + n, "missing stalk");
    stalks.push_back(algebra(field, *it, path + "/stalks/" + n));
  }
  auto index = [&](const json& p, const std::string& pp) {
    std::string n = str(p, pp);
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) schema(pp, "unknown point '" + n + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<std::pair<int, int>> order;
  if (j.contains("order")) {
    const json& o = j["order"];
    if (!o.is_array()) schema(path + "/order", "expected an array of pairs");
    for (size_t i = 0; i < o.size(); ++i) {
      std::string pp = path + "/order/" + std::to_string(i);
      if (!o[i].is_array() || o[i].size() != 2) schema(pp, "expected a pair of point names");
      order.push_back({index(o[i][0], pp + "/0"), index(o[i][1], pp + "/1")});
    }
  }
  std::map<std::pair<int, int>, const json*> res;
  std::map<std::pair<int, int>, std::string> res_path;
  if (j.contains("restrictions")) {
    const json& r = j["restrictions"];
    if (!r.is_array()) schema(path + "/restrictions", "expected an array");
    for (size_t i = 0; i < r.size(); ++i) {
      std::string pp = path + "/restrictions/" + std::to_string(i);
      int a = index(need(r[i], "from", pp), pp + "/from");
      int b = index(need(r[i], "to", pp), pp + "/to");
      res[{a, b}] = &r[i];
      res_path[{a, b}] = pp;
    }
  }
  std::vector<Edge> edges;
  for (auto [a, b] : order) {
    auto it = res.find({a, b});
    if (it == res.end()) schema(path + "/restrictions", "no restriction for " + names[a] + " -> " + names[b]);
    edges.push_back({a, b, hom(stalks[a], stalks[b], *it->second, res_path[{a, b}])});
    res.erase(it);
  }
  if (!res.empty()) schema(res_path[res.begin()->first], "restriction for a pair not listed in the order");
  return guarded(path, [&] { return FinSpace::make(field, names, stalks, edges); });
}

std::vector<Vec> matrix(const LocAlgebra& ring, const json& j, size_t cols, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of rows");
  std::vector<Vec> out;
  for (size_t i = 0; i < j.size(); ++i) {
    auto row = strings(j[i], path + "/" + std::to_string(i));
    if (row.size() != cols) schema(path + "/" + std::to_string(i), "row has the wrong length");
    Vec v;
    for (size_t c = 0; c < cols; ++c)
      v.push_back(guarded(path + "/" + std::to_string(i) + "/" + std::to_string(c), [&] { return ring.parse(row[c]); }));
    out.push_back(v);
  }
  return out;
}

SheafModule module_of(const SpacePtr& x, const json& j, const std::string& path) {
  const json& st = need(j, "stalks", path);
  std::vector<FpModule> stalks;
  for (int p = 0; p < x->size(); ++p) {
    std::string pp = path + "/stalks/" + x->name(p);
    if (!st.contains(x->name(p))) schema(pp, "missing module stalk");
    const json& s = st[x->name(p)];
    int g = integer(need(s, "gens", pp), pp + "/gens");
    std::vector<Vec> rels;
    if (s.contains("relations")) rels = matrix(*x->stalk(p), s["relations"], g, pp + "/relations");
    std::optional<std::vector<Degree>> shifts;
    if (s.contains("shifts")) {
      const json& sh = s["shifts"];
      if (!sh.is_array() || sh.size() != static_cast<size_t>(g)) schema(pp + "/shifts", "expected one shift per generator");
      shifts.emplace();
      for (size_t i = 0; i < sh.size(); ++i) shifts->push_back(degree(sh[i], pp + "/shifts/" + std::to_string(i)));
    }
    stalks.push_back(guarded(pp, [&] { return FpModule(x->stalk(p), g, rels, shifts); }));
  }
  std::vector<ModEdge> edges;
  if (j.contains("restrictions")) {
    const json& r = j["restrictions"];
    if (!r.is_array()) schema(path + "/restrictions", "expected an array");
    for (size_t i = 0; i < r.size(); ++i) {
      std::string pp = path + "/restrictions/" + std::to_string(i);
      int a = point_index(*x, need(r[i], "from", pp), pp + "/from");
      int b = point_index(*x, need(r[i], "to", pp), pp + "/to");
      auto imgs = matrix(*x->stalk(b), need(r[i], "images", pp), stalks[b].ngens(), pp + "/images");
      if (imgs.size() != static_cast<size_t>(stalks[a].ngens())) schema(pp + "/images", "expected one row per generator");
      edges.push_back({a, b, imgs});
    }
  }
  return guarded(path, [&] { return SheafModule(x, stalks, edges); });
}

SpaceMap map_of(const SpacePtr& self, const json& j, const std::optional<Field>& field, const std::string& path) {
  SpacePtr src = self, tgt = self;
  if (j.contains("source")) src = space_of(j["source"], field, path + "/source");
  if (j.contains("target")) tgt = space_of(j["target"], field, path + "/target");
  const json& pts = need(j, "points", path);
  const json& com = need(j, "comorphisms", path);
  std::vector<int> images;
  std::vector<AlgHom> homs;
  for (int a = 0; a < src->size(); ++a) {
    std::string pp = path + "/points/" + src->name(a);
    if (!pts.contains(src->name(a))) schema(pp, "missing image point");
    int b = point_index(*tgt, pts[src->name(a)], pp);
    images.push_back(b);
    std::string cp = path + "/comorphisms/" + src->name(a);
    if (!com.contains(src->name(a))) schema(cp, "missing comorphism");
    homs.push_back(hom(tgt->stalk(b), src->stalk(a), com[src->name(a)], cp));
  }
  return guarded(path, [&] { return SpaceMap(src, tgt, images, homs); });
}

json parse_tree(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed document at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

json algebra_json(const LocAlgebra& a) {
  json j;
  j["vars"] = a.vars();
  json rels = json::array(), inv = json::array();
  for (const auto& r : a.relations()) rels.push_back(a.print_original(r));
  for (const auto& s : a.inverted()) inv.push_back(a.print_original(s));
  if (!rels.empty()) j["relations"] = rels;
  if (!inv.empty()) j["invert"] = inv;
  if (a.weights()) {
    json w = json::array();
    for (const auto& d : *a.weights()) w.push_back(d);
    j["weights"] = w;
  }
  return j;
}

}  // namespace

SpaceDocument parse_document(const std::string& text, const std::optional<Field>& field) {
  json j = parse_tree(text);
  SpaceDocument doc;
  doc.space = space_of(j, field, "");
  if (j.contains("modules")) {
    const json& m = j["modules"];
    if (!m.is_object()) schema("/modules", "expected an object");
    for (auto it = m.begin(); it != m.end(); ++it)
      doc.modules.emplace_back(it.key(), module_of(doc.space, it.value(), "/modules/" + it.key()));
  }
  if (j.contains("maps")) {
    const json& m = j["maps"];
    if (!m.is_object()) schema("/maps", "expected an object");
    for (auto it = m.begin(); it != m.end(); ++it)
      doc.maps.push_back({it.key(), map_of(doc.space, it.value(), field, "/maps/" + it.key())});
  }
  if (j.contains("sections")) {
    const json& s = j["sections"];
    if (!s.is_object()) schema("/sections", "expected an object");
    const FinSpace& x = *doc.space;
    for (auto it = s.begin(); it != s.end(); ++it) {
      std::string path = "/sections/" + it.key();
      const json& e = it.value();
      NamedSections ns;
      ns.name = it.key();
      for (const auto& p : strings(need(e, "points", path), path + "/points")) {
        int i = x.index(p);
        if (i < 0) schema(path + "/points", "unknown point '" + p + "'");
        ns.points.push_back(i);
      }
      std::sort(ns.points.begin(), ns.points.end());
      ns.presentation.algebra = algebra(x.field(), need(e, "algebra", path), path + "/algebra");
      const json& to = need(e, "to_points", path);
      for (auto t = to.begin(); t != to.end(); ++t) {
        int i = x.index(t.key());
        if (i < 0) schema(path + "/to_points/" + t.key(), "unknown point");
        ns.presentation.to_points.emplace(
            i, hom(ns.presentation.algebra, x.stalk(i), t.value(), path + "/to_points/" + t.key()));
      }
      if (e.contains("from_points")) {
        const json& from = e["from_points"];
        for (auto t = from.begin(); t != from.end(); ++t) {
          int i = x.index(t.key());
          if (i < 0) schema(path + "/from_points/" + t.key(), "unknown point");
          ns.presentation.from_points.emplace(
              i, hom(x.stalk(i), ns.presentation.algebra, t.value(), path + "/from_points/" + t.key()));
        }
      }
      doc.sections.push_back(ns);
    }
  }
  if (j.contains("roofs")) {
    const json& r = j["roofs"];
    if (!r.is_object()) schema("/roofs", "expected an object");
    for (auto it = r.begin(); it != r.end(); ++it) {
      std::string path = "/roofs/" + it.key();
      RoofRef ref{it.key(), str(need(it.value(), "left", path), path + "/left"),
                  str(need(it.value(), "right", path), path + "/right")};
      if (!doc.map(ref.left)) schema(path + "/left", "unknown map '" + ref.left + "'");
      if (!doc.map(ref.right)) schema(path + "/right", "unknown map '" + ref.right + "'");
      doc.roofs.push_back(ref);
    }
  }
  return doc;
}

std::string canonical_document(const std::string& text) { return parse_tree(text).dump(2) + "\n"; }

std::string print_space(const FinSpace& x) {
  json j;
  j["field"] = x.field().name();
  j["points"] = x.names();
  json order = json::array(), res = json::array(), stalks = json::object();
  for (int p = 0; p < x.size(); ++p) stalks[x.name(p)] = algebra_json(*x.stalk(p));
  for (const auto& e : x.edges()) {
    order.push_back({x.name(e.from), x.name(e.to)});
    json r;
    r["from"] = x.name(e.from);
    r["to"] = x.name(e.to);
    json im = json::object();
    const auto& src = *e.hom.source();
    const auto& tgt = *e.hom.target();
    for (int v = 0; v < src.nvars(); ++v) im[src.vars()[v]] = tgt.print(e.hom.images()[v]);
    r["images"] = im;
    if (e.hom.is_localization()) {
      json ex = json::array();
      for (const auto& s : e.hom.extra()) ex.push_back(src.print(s));
      r["extra_invert"] = ex;
    } else if (e.hom.flat_certified()) {
      r["flat"] = true;
    }
    res.push_back(r);
  }
  j["order"] = order;
  j["stalks"] = stalks;
  j["restrictions"] = res;
  return j.dump(2) + "\n";
}

}  // namespace finsch
