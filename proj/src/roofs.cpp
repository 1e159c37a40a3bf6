#include "finsch/roofs.hpp"

#include "finsch/errors.hpp"

namespace finsch {

namespace {

ClassReport derived(const std::string& why) {
  ClassReport r;
  r.verdict = Verdict::True;
  r.reason = why;
  return r;
}

}  // namespace

Roof make_roof(const SpaceMap& left, const SpaceMap& right) {
  if (left.source().get() != right.source().get()) throw Error("the legs of a roof must share their source");
  ClassReport q = map_is_quasi_iso(left);
  if (q.verdict != Verdict::True) throw Uncertified("left leg is not a certified quasi-isomorphism: " + q.reason);
  ClassReport s = map_is_schematic(right);
  if (s.verdict != Verdict::True) throw Uncertified("right leg is not a certified schematic morphism: " + s.reason);
  return {left, right, q, s};
}

Roof identity_roof(const SpacePtr& x) {
  auto id = SpaceMap::identity(x);
  return make_roof(id, id);
}

Roof roof_of(const SpaceMap& f) { return make_roof(SpaceMap::identity(f.source()), f); }

Roof compose(const Roof& f, const Roof& g) {
  FiberProduct p = fiber_product(f.right, g.left);
  return {p.first.then(f.left), p.second.then(g.right),
          derived("base change of a quasi-isomorphism along a schematic morphism, composed with a quasi-isomorphism"),
          derived("composite of schematic morphisms")};
}

Roof invert(const Roof& f) {
  ClassReport q = map_is_quasi_iso(f.right);
  if (q.verdict != Verdict::True) throw NotInvertible("right leg is not a quasi-isomorphism: " + q.reason);
  return {f.right, f.left, q, derived("quasi-isomorphisms are schematic")};
}

bool roof_equal(const Roof& f, const Roof& g) {
  if (f.source()->names() != g.source()->names() || f.target()->names() != g.target()->names())
    throw Error("roofs between different spaces");
  FiberProduct p = fiber_product(f.left, g.left);
  MinimalModel mm;
  try {
    mm = minimal_model(p.space);
  } catch (const NotLocalizationPresented& e) {
    throw Uncertified(std::string("minimal model of the fiber product: ") + e.what());
  }
  std::vector<AlgHom> ids;
  for (int i = 0; i < mm.space->size(); ++i) ids.push_back(AlgHom::identity(mm.space->stalk(i)));
  SpaceMap s(mm.space, p.space, mm.representative, ids);
  return s.then(p.first).then(f.right).same_as(s.then(p.second).then(g.right));
}

}  // namespace finsch
