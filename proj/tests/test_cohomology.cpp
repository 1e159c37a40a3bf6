#include <doctest.h>

#include "finsch/cohomology.hpp"
#include "finsch/errors.hpp"
#include "finsch/fixtures.hpp"
#include "oracles.hpp"

using namespace finsch;

TEST_CASE("godement complex shapes") {
  auto pt = fixture("point(Q[x])").space;
  auto c = godement(vec_slice(SheafModule::structure_sheaf(fixture("point").space), std::nullopt), {0});
  CHECK(c.chains.size() == 1);
  CHECK(c.dims == std::vector<int>{1});
  auto p1 = fixture("p1").space;
  auto f = vec_slice(SheafModule::structure_sheaf(p1), Degree{0});
  auto g = godement(f, p1->all_points());
  REQUIRE(g.chains.size() == 2);
  CHECK(g.chains[0].size() == 3);
  CHECK(g.chains[1].size() == 2);
  VecSheaf chain;
  chain.field = Field::rationals();
  chain.leq = {{true, true, true}, {false, true, true}, {false, false, true}};
  chain.dims = {1, 1, 1};
  for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}}) chain.maps.emplace(std::make_pair(a, b), Matrix::identity(chain.field, 1));
  auto h = godement(chain, {0, 1, 2});
  REQUIRE(h.chains.size() == 3);
  CHECK(h.chains[2].size() == 1);
  CHECK(cohomology_dims(h) == std::vector<int>{1, 0, 0});
}

TEST_CASE("projective line twists match the two-chart oracle per degree") {
  auto doc = fixture("p1");
  Window w = Window::uniform(1, -7, 7);
  for (int d = -5; d <= 5; ++d) {
    CAPTURE(d);
    const SheafModule* m = doc.module("O(" + std::to_string(d) + ")");
    REQUIRE(m);
    auto t = cohomology(*m, Backend::Graded, w);
    for (int n = -7; n <= 7; ++n) {
      CAPTURE(n);
      auto o = oracle::p1_twist(d, n);
      CHECK(t.at(0, {n}) == o[0]);
      CHECK(t.at(1, {n}) == o[1]);
    }
  }
  // Frozen totals in the window [-5, 5].
  const int h0[] = {0, 0, 0, 0, 0, 1, 2, 3, 4, 5, 6};
  const int h1[] = {4, 3, 2, 1, 0, 0, 0, 0, 0, 0, 0};
  for (int d = -5; d <= 5; ++d) {
    auto t = cohomology(*doc.module("O(" + std::to_string(d) + ")"), Backend::Graded, Window::uniform(1, -5, 5));
    CHECK(t.total(0) == h0[d + 5]);
    CHECK(t.total(1) == h1[d + 5]);
  }
}

TEST_CASE("projective plane twists match the three-chart oracle per degree") {
  auto doc = fixture("p2");
  Window w = Window::uniform(2, -4, 4);
  for (int d : {-3, -1, 0, 1}) {
    CAPTURE(d);
    auto t = cohomology(*doc.module("O(" + std::to_string(d) + ")"), Backend::Graded, w);
    for (const auto& deg : w.degrees()) {
      CAPTURE(deg[0]);
      CAPTURE(deg[1]);
      auto o = oracle::p2_twist(d, deg[0], deg[1]);
      for (int i = 0; i < 3; ++i) CHECK(t.at(i, deg) == o[i]);
    }
  }
}

TEST_CASE("doubled line and pseudo-circle") {
  auto x = fixture("doubled_line").space;
  auto t = cohomology(SheafModule::structure_sheaf(x), Backend::Graded, Window::uniform(1, -6, 6));
  for (int n = -6; n <= 6; ++n) {
    auto o = oracle::doubled_line(n);
    CHECK(t.at(0, {n}) == o[0]);
    CHECK(t.at(1, {n}) == o[1]);
  }
  auto c = fixture("pseudo_circle").space;
  auto tc = cohomology(SheafModule::structure_sheaf(c), Backend::VectorSpace, std::nullopt);
  auto o = oracle::pseudo_circle();
  CHECK(tc.total(0) == o[0]);
  CHECK(tc.total(1) == o[1]);
  CHECK(o == std::array<int, 2>{1, 1});
}

TEST_CASE("acyclicity on minimal opens and errors") {
  for (const char* name : {"p1", "p2", "doubled_line", "plane_doubled_origin"}) {
    CAPTURE(name);
    auto doc = fixture(name);
    auto x = doc.space;
    Battery b = doc.modules;
    b.emplace_back("O", SheafModule::structure_sheaf(x));
    Window w = Window::uniform(x->grading_rank(), -3, 3);
    for (const auto& [mname, m] : b)
      for (int p = 0; p < x->size(); ++p) {
        auto t = cohomology(m, Backend::Graded, w, x->up(p));
        for (int i = 1; i <= t.max_index(); ++i) CHECK(t.total(i) == 0);
      }
  }
  auto x = fixture("line_two_charts").space;
  CHECK_THROWS_AS(cohomology(SheafModule::structure_sheaf(x), Backend::Graded, std::nullopt), UngradedModule);
  CHECK_THROWS_AS(cohomology(SheafModule::structure_sheaf(x), Backend::VectorSpace, std::nullopt), InfiniteGradedPiece);
  auto p1 = fixture("p1").space;
  CHECK_THROWS_AS(cohomology(SheafModule::structure_sheaf(p1), Backend::Graded, std::nullopt, PointSet{0}), NotOpen);
}

TEST_CASE("higher direct images") {
  auto x = fixture("p1").space;
  auto o = SheafModule::structure_sheaf(x);
  Window w = Window::uniform(1, -4, 4);
  auto id = higher_direct_images(SpaceMap::identity(x), o, Backend::Graded, w);
  for (int y = 0; y < x->size(); ++y) {
    for (int i = 1; i <= id[y].max_index(); ++i) CHECK(id[y].total(i) == 0);
    for (int n = -4; n <= 4; ++n) CHECK(id[y].at(0, {n}) == sections_dimension(*x, x->up(y), Degree{n}));
  }
  auto d = diagonal(x);
  auto r = higher_direct_images(d, o, Backend::Graded, w);
  CHECK(r.size() == 9);
  for (const auto& t : r)
    for (int i = 1; i <= t.max_index(); ++i) CHECK(t.total(i) == 0);
  auto m2 = SheafModule::free(x, 2);
  auto t1 = cohomology(o, Backend::Graded, w);
  auto t2 = cohomology(m2, Backend::Graded, w);
  for (int i = 0; i <= t1.max_index(); ++i)
    for (const auto& deg : w.degrees()) CHECK(t2.at(i, deg) == 2 * t1.at(i, deg));
}
