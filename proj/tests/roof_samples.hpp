// Roofs from the projective line to itself: apexes P1, the two-chart
// covering space, the cylinder of the identity and P1 with a point adjoined
// below U_p0; right legs the apex map or its composite with the chart swap.
#pragma once

#include "finsch/fixtures.hpp"
#include "finsch/roofs.hpp"

namespace samples {

using namespace finsch;

struct Sample {
  Roof roof;
  bool swapped;
};

inline SpaceMap retract_adjoined(const SpacePtr& x, const Adjoined& a, int onto) {
  std::vector<int> pts;
  std::vector<AlgHom> c;
  for (int i = 0; i < x->size(); ++i) {
    pts.push_back(i);
    c.push_back(x->restriction(i, i));
  }
  pts.push_back(onto);
  c.push_back(AlgHom::identity(x->stalk(onto)));
  return SpaceMap(a.space, x, pts, c);
}

struct P1Roofs {
  SpacePtr p1;
  SpaceMap swap;
  std::vector<Sample> samples;

  explicit P1Roofs(const SpaceDocument& doc = fixture("p1")) : p1(doc.space), swap(*doc.map("swap")) {
    std::vector<SpaceMap> apexes;
    apexes.push_back(SpaceMap::identity(p1));
    auto charts = fixture("p1_charts");
    const SpaceMap& collapse = *charts.map("collapse");
    apexes.push_back(SpaceMap(collapse.source(), p1, collapse.points(), collapse.comorphisms()));
    apexes.push_back(cylinder(SpaceMap::identity(p1)).retraction);
    auto adj = adjoin_point(p1, p1->up(p1->index("p0")));
    apexes.push_back(retract_adjoined(p1, adj, p1->index("p0")));
    for (const auto& phi : apexes) {
      samples.push_back({make_roof(phi, phi), false});
      samples.push_back({make_roof(phi, phi.then(swap)), true});
    }
  }
};

inline const P1Roofs& p1_roofs() {
  static const P1Roofs r;
  return r;
}

}  // namespace samples
