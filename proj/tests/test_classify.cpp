#include <doctest.h>

#include <random>

#include "finsch/classify.hpp"
#include "finsch/cohomology.hpp"
#include "finsch/errors.hpp"
#include "finsch/fixtures.hpp"
#include "generators.hpp"

using namespace finsch;

namespace {

Verdict affine_verdict(const SpaceDocument& doc) {
  AffineOptions opts;
  opts.battery = doc.modules;
  if (auto s = doc.section("X")) opts.sections = s->presentation;
  return is_affine(doc.space, opts).verdict;
}

const std::vector<std::string> kSpaces = {"p1",           "p2",           "doubled_line",    "affine_line",
                                          "pseudo_circle", "plane_doubled_origin", "line_two_charts",
                                          "affine_plane", "p1_charts",    "p1_defect"};

}  // namespace

TEST_CASE("fixture verdicts") {
  struct Row {
    const char* name;
    Verdict schematic, affine, semiseparated;
    int removable;
  };
  const Verdict T = Verdict::True, F = Verdict::False, U = Verdict::Undecided;
  const Row rows[] = {
      {"p1", T, F, T, 0},           {"p2", T, F, T, 0},
      {"doubled_line", T, F, T, 0}, {"affine_line", T, T, T, 0},
      {"pseudo_circle", F, F, F, 2}, {"plane_doubled_origin", T, F, F, 0},
      {"line_two_charts", T, T, U, 0}, {"affine_plane", T, T, U, 0},
      {"p1_charts", T, F, T, 0},    {"p1_defect", F, F, F, 0},
  };
  for (const auto& r : rows) {
    CAPTURE(r.name);
    auto doc = fixture(r.name);
    CHECK(is_fr_space(*doc.space).verdict == T);
    CHECK(is_schematic(*doc.space).verdict == r.schematic);
    CHECK(affine_verdict(doc) == r.affine);
    CHECK(is_semiseparated(doc.space).verdict == r.semiseparated);
    CHECK(static_cast<int>(removable_points(*doc.space).size()) == r.removable);
  }
  CHECK(is_affine(fixture("point(Q[x,y])").space).verdict == T);
}

TEST_CASE("affine implies schematic implies fr") {
  for (const auto& name : kSpaces) {
    CAPTURE(name);
    auto doc = fixture(name);
    if (affine_verdict(doc) == Verdict::True) CHECK(is_schematic(*doc.space).holds());
    if (is_schematic(*doc.space).holds()) CHECK(is_fr_space(*doc.space).holds());
    for (int x = 0; x < doc.space->size(); ++x)
      if (is_schematic(*doc.space).holds()) {
        auto u = open_subspace(doc.space, doc.space->up(x));
        CHECK(is_affine(u.space).holds());
      }
  }
}

TEST_CASE("affineness reasons") {
  auto p1 = fixture("p1");
  auto r = is_affine(p1.space);
  CHECK(r.verdict == Verdict::False);
  CHECK_FALSE(r.reason.empty());
  AffineOptions off;
  off.use_cohomology = false;
  off.generated_ideals = false;
  CHECK(is_affine(p1.space, off).verdict == Verdict::Undecided);
  auto defect = fixture("p1_defect");
  CHECK(is_affine(defect.space).verdict == Verdict::False);
}

TEST_CASE("serre harness on the doubled line") {
  auto doc = fixture("doubled_line");
  auto rep = serre_harness(doc.space, default_battery(doc.space), Window::uniform(1, -6, 6));
  REQUIRE(rep.affine_verdict.has_value());
  CHECK_FALSE(*rep.affine_verdict);
  CHECK_FALSE(rep.all_vanish);
  CHECK_FALSE(rep.contradiction);
  CHECK(rep.conclusion.find("not affine") != std::string::npos);
  auto line = fixture("affine_line");
  auto ok = serre_harness(line.space, default_battery(line.space), Window::uniform(1, -4, 4));
  CHECK(ok.all_vanish);
  CHECK_FALSE(ok.contradiction);
}

TEST_CASE("removability agrees with the covering oracle on small posets") {
  std::mt19937 rng(7);
  int checked = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& o : gen::posets(n))
      for (int trial = 0; trial < 3; ++trial) {
        auto s = gen::random_roots(o, rng);
        auto x = gen::localization_space(o, s);
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        for (int p = 0; p < n; ++p) {
          CHECK(is_removable(*x, p) == gen::removable_oracle(o, s, all, p));
          ++checked;
        }
      }
  CHECK(checked > 100);
}

TEST_CASE("minimal model is idempotent and order independent") {
  CHECK(gen::posets(1).size() == 1);
  CHECK(gen::posets(2).size() == 2);
  CHECK(gen::posets(3).size() == 5);
  CHECK(gen::posets(4).size() == 16);
  CHECK(gen::posets(5).size() == 63);
  std::mt19937 rng(11);
  for (int n = 1; n <= 5; ++n)
    for (const auto& o : gen::posets(n)) {
      auto s = gen::random_roots(o, rng);
      auto x = gen::localization_space(o, s);
      auto mm = minimal_model(x);
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      std::set<std::vector<int>> leaves, visited;
      gen::removal_leaves(x, all, leaves, visited);
      REQUIRE(leaves.size() == 1);
      std::vector<int> kept = mm.representative;
      std::sort(kept.begin(), kept.end());
      CHECK(*leaves.begin() == kept);
      CHECK(removable_points(*mm.space).empty());
      CHECK(minimal_model(mm.space).space->size() == mm.space->size());
    }
}

TEST_CASE("minimal model of the fixtures") {
  auto pc = fixture("pseudo_circle").space;
  auto mm = minimal_model(pc);
  CHECK(mm.space->size() == 2);
  CHECK(mm.removed.size() == 2);
  auto charts = fixture("p1_charts").space;
  auto mc = minimal_model(charts);
  CHECK(mc.space->size() == 3);
  CHECK(mc.space->is_t0());
}

TEST_CASE("adjoining a point and minimizing returns the space") {
  int rounds = 0;
  for (const auto& name : kSpaces) {
    CAPTURE(name);
    auto doc = fixture(name);
    auto x = doc.space;
    auto base = minimal_model(x).space;
    std::vector<Adjoined> adjoined;
    adjoined.push_back(adjoin_point(x, x->up(0)));
    if (auto s = doc.section("X")) adjoined.push_back(adjoin_point(x, s->points, s->presentation));
    for (const auto& a : adjoined) {
      auto mm = minimal_model(a.space);
      CHECK(find_isomorphism(mm.space, base).has_value());
      if (x->is_t0() && removable_points(*x).empty()) CHECK(find_isomorphism(mm.space, x).has_value());
      ++rounds;
    }
  }
  CHECK(rounds >= 10);
}

TEST_CASE("morphism classification") {
  auto doc = fixture("p1");
  auto p1 = doc.space;
  auto all_true = [](const MapReport& r) {
    for (const auto* c : {&r.schematic, &r.affine, &r.flat, &r.faithfully_flat, &r.quasi_iso, &r.quasi_open,
                          &r.quasi_closed})
      if (!c->holds()) return false;
    return true;
  };
  CHECK(all_true(classify_map(*doc.map("swap"))));
  CHECK(all_true(classify_map(*fixture("p1_charts").map("collapse"))));
  CHECK(all_true(classify_map(kolmogorov_quotient(fixture("p1_charts").space).map)));

  auto u = open_subspace(p1, p1->up(p1->index("p0")));
  auto r = classify_map(u.inclusion);
  CHECK(r.schematic.holds());
  CHECK(r.affine.holds());
  CHECK(r.flat.holds());
  CHECK(r.quasi_open.holds());
  CHECK(r.faithfully_flat.verdict == Verdict::False);
  CHECK(r.quasi_iso.verdict == Verdict::False);
  CHECK(r.quasi_closed.verdict == Verdict::False);

  auto c = cylinder(u.inclusion);
  CHECK(is_schematic(*c.space).holds());

  auto d = diagonal(p1);
  auto rd = classify_map(d);
  CHECK(rd.schematic.holds());
  CHECK(rd.affine.holds());
  CHECK(rd.quasi_closed.holds());
  CHECK(rd.quasi_iso.verdict == Verdict::False);

  auto defect = fixture("p1_defect").space;
  CHECK(is_schematic(*defect).verdict == Verdict::False);
}
