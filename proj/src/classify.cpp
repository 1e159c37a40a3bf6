#include "finsch/classify.hpp"

#include <algorithm>
#include <sstream>

#include "finsch/errors.hpp"

namespace finsch {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    default:
      return "undecided";
  }
}

std::string ClassReport::to_text(const std::string& title) const {
  std::ostringstream s;
  s << title << ": " << finsch::to_string(verdict) << "\n";
  if (!reason.empty()) s << "  reason: " << reason << "\n";
  if (!note.empty()) s << "  note: " << note << "\n";
  if (!evidence.empty()) {
    s << "  evidence:\n";
    for (const auto& e : evidence) s << "    [" << e.outcome << "] " << e.criterion << " @ " << e.location << "\n";
  }
  return s.str();
}

namespace {

class Builder {
 public:
  void pass(const std::string& c, const std::string& loc) { r_.evidence.push_back({c, loc, "pass"}); }
  void fail(const std::string& c, const std::string& loc, const std::string& why) {
    r_.evidence.push_back({c, loc, "fail"});
    if (!failed_) {
      failed_ = true;
      first_fail_ = why;
    }
  }
  void skip(const std::string& c, const std::string& loc, const std::string& why) {
    r_.evidence.push_back({c, loc, "skip"});
    if (!undecided_) {
      undecided_ = true;
      first_skip_ = why;
    }
  }
  bool failed() const { return failed_; }
  void note(const std::string& n) { r_.note = n; }
  ClassReport finish(const std::string& ok = "") {
    if (failed_) {
      r_.verdict = Verdict::False;
      r_.reason = first_fail_;
    } else if (undecided_) {
      r_.verdict = Verdict::Undecided;
      r_.reason = first_skip_;
    } else {
      r_.verdict = Verdict::True;
      r_.reason = ok;
    }
    return r_;
  }
  ClassReport decide(Verdict v, const std::string& why) {
    r_.verdict = v;
    r_.reason = why;
    return r_;
  }
  ClassReport& raw() { return r_; }

 private:
  ClassReport r_;
  bool failed_ = false, undecided_ = false;
  std::string first_fail_, first_skip_;
};

std::string pair_name(const FinSpace& x, int a, int b) { return x.name(a) + " -> " + x.name(b); }

std::optional<Backend> backend_for(const SheafModule& m) {
  if (m.graded()) return Backend::Graded;
  for (const auto& s : m.stalks())
    if (!s.ring()->finite_dimensional()) return std::nullopt;
  return Backend::VectorSpace;
}

Window effective_window(const FinSpace& x, const std::optional<Window>& w) {
  return w ? *w : Window::uniform(x.grading_rank(), -10, 10);
}

// First i > 0 with nonzero cohomology, if any.
std::optional<int> nonvanishing(const CohomologyTable& t) {
  for (int i = 1; i <= t.max_index(); ++i)
    if (t.total(i) != 0) return i;
  return std::nullopt;
}

}  // namespace

ClassReport is_fr_space(const FinSpace& x) {
  Builder b;
  for (const auto& e : x.edges()) {
    if (e.hom.flat_certified())
      b.pass("restriction flat", pair_name(x, e.from, e.to));
    else
      b.skip("restriction flat", pair_name(x, e.from, e.to),
             "restriction " + pair_name(x, e.from, e.to) + " is not a localization and has no flatness certificate");
  }
  return b.finish("every restriction is a localization or certified flat");
}

ClassReport is_schematic(const FinSpace& x) {
  Builder b;
  const std::string crit = "O_y (x)_{O_x} O_y' -> prod_{z in U_yy'} O_z faithfully flat";
  for (int a = 0; a < x.size(); ++a) {
    PointSet up = x.up(a);
    for (size_t i = 0; i < up.size(); ++i)
      for (size_t j = i + 1; j < up.size(); ++j) {
        int y = up[i], z = up[j];
        if (x.leq(y, z) || x.leq(z, y)) continue;
        std::string loc = x.name(a) + " <= " + x.name(y) + ", " + x.name(z);
        try {
          const AlgHom& ry = x.restriction(a, y);
          const AlgHom& rz = x.restriction(a, z);
          if (!ry.is_localization() || !rz.is_localization()) throw NotLocalizationPresented("restriction is not a localization");
          std::vector<Poly> sig;
          for (int w : x.up2(y, z)) {
            const AlgHom& rw = x.restriction(a, w);
            if (!rw.is_localization()) throw NotLocalizationPresented("restriction is not a localization");
            sig.push_back(rw.sigma());
          }
          if (localized_cover(*x.stalk(a), {ry.sigma(), rz.sigma()}, sig))
            b.pass(crit, loc);
          else
            b.fail(crit, loc, "cover test fails at " + loc);
        } catch (const NotLocalizationPresented& e) {
          b.skip(crit, loc, std::string("not localization presented at ") + loc);
        }
      }
  }
  return b.finish("every U_x is affine");
}

Battery default_battery(const SpacePtr& x) {
  Battery out;
  out.emplace_back("O", SheafModule::structure_sheaf(x));
  for (int p = 0; p < x->size(); ++p) {
    const auto& ring = x->stalk(p);
    for (int v = 0; v < ring->nvars(); ++v) {
      Poly g = ring->var(v) * ring->var(v);
      if (ring->is_unit(g)) continue;
      IdealSheaf ideal{x, {}};
      for (int z = 0; z < x->size(); ++z) {
        if (x->leq(p, z))
          ideal.generators.push_back({x->restriction(p, z).apply(g)});
        else
          ideal.generators.push_back({x->stalk(z)->one()});
      }
      try {
        SheafModule m = ideal_module(ideal);
        if (!is_quasi_coherent(m).quasi_coherent) continue;
        out.emplace_back("I(" + x->name(p) + ":" + ring->vars()[v] + "^2)", m);
      } catch (const Error&) {
      }
    }
  }
  return out;
}

ClassReport is_affine(const SpacePtr& xp, const AffineOptions& opts) {
  const FinSpace& x = *xp;
  Builder b;
  ClassReport sch = is_schematic(x);
  if (sch.verdict == Verdict::False) {
    b.fail("affine implies schematic", "X", "not schematic: " + sch.reason);
    return b.finish();
  }
  if (sch.verdict == Verdict::True) b.pass("schematic", "X");
  auto all = x.all_points();
  if (auto m = x.minimum(all)) {
    b.pass("minimum point", x.name(*m));
    return b.decide(Verdict::True, "the space has a minimum " + x.name(*m));
  }
  if (sch.verdict == Verdict::True) {
    try {
      MinimalModel mm = minimal_model(xp);
      if (auto m = mm.space->minimum(mm.space->all_points())) {
        b.pass("minimal model has a minimum", mm.space->name(*m));
        return b.decide(Verdict::True, "the minimal model has a minimum " + mm.space->name(*m));
      }
      b.skip("minimal model has a minimum", "X_M", "");
    } catch (const NotLocalizationPresented&) {
      b.skip("minimal model", "X", "");
    }
  }
  if (opts.sections) {
    try {
      if (certify_sections(x, all, *opts.sections)) {
        b.pass("O(X) -> prod O_x and pairwise tensor conditions faithfully flat", "X");
        return b.decide(Verdict::True, "the supplied presentation of O(X) satisfies both cover conditions");
      }
      b.skip("supplied O(X) presentation", "X", "");
    } catch (const Error&) {
      b.skip("supplied O(X) presentation", "X", "");
    }
  }
  if (opts.use_cohomology) {
    Window w = effective_window(x, opts.window);
    auto refute = [&](const std::string& name, const SheafModule& m, const std::optional<PointSet>& u,
                      const std::string& where) -> bool {
      auto be = backend_for(m);
      if (!be) {
        b.skip("H^{>0} vanishes", name + " on " + where, "");
        return false;
      }
      if (!is_quasi_coherent(m).quasi_coherent) {
        b.skip("H^{>0} vanishes (module not quasi-coherent)", name, "");
        return false;
      }
      CohomologyTable t = cohomology(m, *be, w, u);
      if (auto i = nonvanishing(t)) {
        b.fail("H^{>0} vanishes", name + " on " + where,
               "H^" + std::to_string(*i) + "(" + where + ", " + name + ") != 0, impossible on an affine space");
        return true;
      }
      b.pass("H^{>0} vanishes", name + " on " + where);
      return false;
    };
    for (const auto& [name, m] : opts.battery)
      if (refute(name, m, std::nullopt, "X")) return b.finish();
    SheafModule o = SheafModule::structure_sheaf(xp);
    if (refute("O", o, std::nullopt, "X")) return b.finish();
    for (int p = 0; p < x.size(); ++p)
      for (int q = p + 1; q < x.size(); ++q) {
        if (x.leq(p, q) || x.leq(q, p)) continue;
        PointSet u = x.up2(p, q);
        if (u.empty()) continue;
        if (refute("O", o, u, "U_{" + x.name(p) + "," + x.name(q) + "}")) return b.finish();
      }
    if (opts.generated_ideals) {
      Battery gen = default_battery(xp);
      for (size_t k = 1; k < gen.size(); ++k)
        if (refute(gen[k].first, gen[k].second, std::nullopt, "X")) return b.finish();
    }
    b.note("cohomology checked in window " + w.to_string());
  }
  return b.decide(Verdict::Undecided, "O(X) has no certified presentation and no battery module refutes affineness");
}

ClassReport is_semiseparated(const SpacePtr& xp, const std::optional<Window>& window) {
  const FinSpace& x = *xp;
  Builder b;
  ClassReport sch = is_schematic(x);
  if (sch.verdict == Verdict::False) {
    b.fail("schematic", "X", "not schematic");
    return b.finish();
  }
  if (sch.verdict == Verdict::Undecided) b.skip("schematic", "X", sch.reason);
  SheafModule o = SheafModule::structure_sheaf(xp);
  auto be = backend_for(o);
  if (!be) return b.decide(Verdict::Undecided, "stalks are neither graded nor finite dimensional");
  Window w = effective_window(x, window);
  for (int p = 0; p < x.size(); ++p)
    for (int q = p + 1; q < x.size(); ++q) {
      if (x.leq(p, q) || x.leq(q, p)) continue;
      PointSet u = x.up2(p, q);
      std::string loc = "U_{" + x.name(p) + "," + x.name(q) + "}";
      if (u.empty()) {
        b.pass("U_pq acyclic", loc);
        continue;
      }
      auto t = cohomology(o, *be, w, u);
      if (auto i = nonvanishing(t))
        b.fail("U_pq acyclic", loc, "H^" + std::to_string(*i) + "(" + loc + ", O) != 0");
      else
        b.pass("U_pq acyclic", loc);
    }
  if (*be == Backend::Graded) b.note("vanishing checked in window " + w.to_string());
  return b.finish("every U_pq is acyclic");
}

bool is_removable(const FinSpace& x, int p) {
  std::vector<AlgHom> covers;
  for (int q = 0; q < x.size(); ++q)
    if (x.lt(p, q)) covers.push_back(x.restriction(p, q));
  return cover_is_faithfully_flat(x.stalk(p), covers);
}

PointSet removable_points(const FinSpace& x) {
  PointSet out;
  for (int p = 0; p < x.size(); ++p)
    if (is_removable(x, p)) out.push_back(p);
  return out;
}

MinimalModel minimal_model(const SpacePtr& x) {
  MinimalModel mm;
  mm.quotient = kolmogorov_quotient(x);
  const SpacePtr& q = mm.quotient.space;
  mm.removed = removable_points(*q);
  PointSet keep;
  for (int p = 0; p < q->size(); ++p)
    if (!std::binary_search(mm.removed.begin(), mm.removed.end(), p)) keep.push_back(p);
  Embedded e = subspace(q, keep);
  mm.space = e.space;
  mm.inclusion = e.inclusion;
  for (int p : e.points) mm.representative.push_back(mm.quotient.representative[p]);
  return mm;
}

ClassReport map_is_schematic(const SpaceMap& f) {
  const FinSpace& x = *f.source();
  const FinSpace& y = *f.target();
  Builder b;
  for (const auto* s : {&x, &y}) {
    ClassReport r = is_schematic(*s);
    std::string which = s == &x ? "source" : "target";
    if (r.verdict == Verdict::False) b.fail("schematic space", which, which + " is not schematic");
    if (r.verdict == Verdict::Undecided) b.skip("schematic space", which, which + ": " + r.reason);
  }
  if (b.failed()) return b.finish();
  const std::string crit = "Spec(O_x (x)_{O_f(x)} O_y) covered by U_xy";
  for (int a = 0; a < x.size(); ++a)
    for (int c : y.up(f(a))) {
      std::string loc = x.name(a) + ", " + y.name(c);
      try {
        const AlgHom& r = y.restriction(f(a), c);
        if (!r.is_localization()) throw NotLocalizationPresented("target restriction");
        Poly d = f.comorphism(a).apply(r.sigma());
        std::vector<Poly> sig;
        for (int z : x.up(a))
          if (y.leq(c, f(z))) {
            const AlgHom& rz = x.restriction(a, z);
            if (!rz.is_localization()) throw NotLocalizationPresented("source restriction");
            sig.push_back(rz.sigma());
          }
        if (localized_cover(*x.stalk(a), {d}, sig))
          b.pass(crit, loc);
        else
          b.fail(crit, loc, "cover test fails at " + loc);
      } catch (const NotLocalizationPresented&) {
        b.skip(crit, loc, "not localization presented at " + loc);
      }
    }
  return b.finish("schematic by the spectral surjectivity criterion");
}

ClassReport map_is_affine(const SpaceMap& f, const std::optional<Window>& window) {
  const FinSpace& y = *f.target();
  Builder b;
  ClassReport sch = map_is_schematic(f);
  if (sch.verdict == Verdict::True)
    b.pass("schematic (so f_* O_X is quasi-coherent)", "f");
  else {
    try {
      auto qc = pushforward_is_quasi_coherent(pushforward(f, SheafModule::structure_sheaf(f.source())));
      if (qc.quasi_coherent)
        b.pass("f_* O_X quasi-coherent", "f");
      else
        b.fail("f_* O_X quasi-coherent", "f", "f_* O_X is not quasi-coherent");
    } catch (const Error& e) {
      b.skip("f_* O_X quasi-coherent", "f", e.what());
    }
  }
  AffineOptions opts;
  opts.window = window;
  for (int c = 0; c < y.size(); ++c) {
    PointSet pre = f.preimage(y.up(c));
    std::string loc = "f^-1(U_" + y.name(c) + ")";
    if (pre.empty()) {
      b.pass("preimage affine", loc);
      continue;
    }
    Embedded e = open_subspace(f.source(), pre);
    ClassReport a = is_affine(e.space, opts);
    if (a.verdict == Verdict::True) b.pass("preimage affine", loc);
    if (a.verdict == Verdict::False) b.fail("preimage affine", loc, loc + " is not affine: " + a.reason);
    if (a.verdict == Verdict::Undecided) b.skip("preimage affine", loc, loc + ": " + a.reason);
  }
  return b.finish("f_* O_X quasi-coherent and every f^-1(U_y) affine");
}

ClassReport map_is_flat(const SpaceMap& f) {
  Builder b;
  const FinSpace& x = *f.source();
  for (int a = 0; a < x.size(); ++a) {
    if (f.comorphism(a).flat_certified())
      b.pass("comorphism flat", x.name(a));
    else
      b.skip("comorphism flat", x.name(a), "comorphism at " + x.name(a) + " is not certified flat");
  }
  return b.finish("every comorphism is a localization or certified flat");
}

namespace {
std::vector<AlgHom> composites(const SpaceMap& f, int c, const PointSet& pre) {
  std::vector<AlgHom> out;
  for (int a : pre) out.push_back(f.target()->restriction(c, f(a)).then(f.comorphism(a)));
  return out;
}
}  // namespace

ClassReport map_is_faithfully_flat(const SpaceMap& f) {
  Builder b;
  ClassReport fl = map_is_flat(f);
  if (fl.verdict != Verdict::True) b.skip("flat", "f", fl.reason);
  const FinSpace& y = *f.target();
  for (int c = 0; c < y.size(); ++c) {
    PointSet pre = f.preimage(y.up(c));
    std::string loc = y.name(c);
    try {
      if (cover_is_faithfully_flat(y.stalk(c), composites(f, c, pre)))
        b.pass("O_y -> prod_{x in f^-1(U_y)} O_x faithfully flat", loc);
      else
        b.fail("O_y -> prod_{x in f^-1(U_y)} O_x faithfully flat", loc, "cover test fails at " + loc);
    } catch (const NotLocalizationPresented&) {
      b.skip("O_y -> prod_{x in f^-1(U_y)} O_x faithfully flat", loc, "not localization presented at " + loc);
    }
  }
  return b.finish("flat and every O_y covers its preimage");
}

ClassReport map_is_quasi_iso(const SpaceMap& f, const std::optional<Window>&) {
  Builder b;
  const FinSpace& x = *f.source();
  const FinSpace& y = *f.target();
  const std::string crit = "O_y presents O(f^-1(U_y)) with f^-1(U_y) affine";
  for (int c = 0; c < y.size(); ++c) {
    PointSet pre = f.preimage(y.up(c));
    std::string loc = y.name(c);
    if (auto m = x.minimum(pre)) {
      AlgHom h = y.restriction(c, f(*m)).then(f.comorphism(*m));
      if (h.is_isomorphism())
        b.pass(crit, loc);
      else
        b.fail(crit, loc, "O_" + loc + " -> O(f^-1(U_" + loc + ")) = O_" + x.name(*m) + " is not an isomorphism");
      continue;
    }
    try {
      SectionPresentation p;
      p.algebra = y.stalk(c);
      auto comp = composites(f, c, pre);
      for (size_t i = 0; i < pre.size(); ++i) p.to_points.emplace(pre[i], comp[i]);
      if (certify_sections(x, pre, p))
        b.pass(crit, loc);
      else
        b.fail(crit, loc, "O_" + loc + " -> O(f^-1(U_" + loc + ")) is not an isomorphism onto an affine open");
    } catch (const NotLocalizationPresented&) {
      b.skip(crit, loc, "not localization presented at " + loc);
    }
  }
  return b.finish("f_* O_X = O_Y and f is affine");
}

ClassReport map_is_quasi_open(const SpaceMap& f) {
  Builder b;
  ClassReport sch = map_is_schematic(f);
  if (sch.verdict == Verdict::False) {
    b.fail("schematic", "f", "not schematic");
    return b.finish();
  }
  if (sch.verdict == Verdict::Undecided) b.skip("schematic", "f", sch.reason);
  Cylinder c = cylinder(f);
  ClassReport cs = is_schematic(*c.space);
  if (cs.verdict == Verdict::True) b.pass("cylinder schematic", "C(f)");
  if (cs.verdict == Verdict::False) b.fail("cylinder schematic", "C(f)", "C(f) is not schematic: " + cs.reason);
  if (cs.verdict == Verdict::Undecided) b.skip("cylinder schematic", "C(f)", cs.reason);
  return b.finish("the cylinder C(f) is schematic");
}

ClassReport map_is_quasi_closed(const SpaceMap& f, const std::optional<Window>& window) {
  Builder b;
  ClassReport a = map_is_affine(f, window);
  if (a.verdict == Verdict::False) {
    b.fail("affine", "f", a.reason);
    return b.finish();
  }
  if (a.verdict == Verdict::Undecided) b.skip("affine", "f", a.reason);
  Pushforward p = pushforward(f, SheafModule::structure_sheaf(f.source()));
  const FinSpace& y = *f.target();
  for (const auto& s : p.stalks) {
    std::string loc = y.name(s.point);
    if (s.preimage.empty()) {
      b.pass("O_y -> (f_* O_X)_y surjective", loc);
    } else if (s.structure) {
      if (s.structure->is_surjective())
        b.pass("O_y -> (f_* O_X)_y surjective", loc);
      else
        b.fail("O_y -> (f_* O_X)_y surjective", loc, "O_" + loc + " -> (f_* O_X)_" + loc + " is not surjective");
    } else {
      b.skip("O_y -> (f_* O_X)_y surjective", loc, "sections over f^-1(U_" + loc + ") have no presentation");
    }
  }
  return b.finish("affine and O_Y -> f_* O_X surjective");
}

MapReport classify_map(const SpaceMap& f, const std::optional<Window>& window) {
  MapReport r;
  r.schematic = map_is_schematic(f);
  r.affine = map_is_affine(f, window);
  r.flat = map_is_flat(f);
  r.faithfully_flat = map_is_faithfully_flat(f);
  r.quasi_iso = map_is_quasi_iso(f, window);
  r.quasi_open = map_is_quasi_open(f);
  r.quasi_closed = map_is_quasi_closed(f, window);
  return r;
}

std::string MapReport::to_text() const {
  return schematic.to_text("schematic") + affine.to_text("affine") + flat.to_text("flat") +
         faithfully_flat.to_text("faithfully_flat") + quasi_iso.to_text("quasi_iso") +
         quasi_open.to_text("quasi_open_immersion") + quasi_closed.to_text("quasi_closed_immersion");
}

}  // namespace finsch
