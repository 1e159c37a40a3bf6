#include <doctest.h>

#include <algorithm>

#include "finsch/errors.hpp"
#include "finsch/fixtures.hpp"
#include "finsch/io.hpp"
#include "finsch/space.hpp"

using namespace finsch;

namespace {
PointSet pts(const FinSpace& x, std::initializer_list<const char*> names) {
  PointSet out;
  for (auto n : names) out.push_back(x.index(n));
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("every fixture parses and validates") {
  for (auto name : fixture_names()) {
    if (name == "point(R)") name = "point(Q[x,y])";
    CAPTURE(name);
    auto doc = fixture(name);
    CHECK(doc.space->validate().empty());
    for (const auto& [mname, m] : doc.modules) {
      CAPTURE(mname);
      CHECK(m.validate().empty());
    }
    for (const auto& m : doc.maps) {
      CAPTURE(m.name);
      CHECK(m.map.validate().empty());
    }
  }
}

TEST_CASE("projective line opens") {
  auto x = fixture("p1").space;
  CHECK(x->size() == 3);
  CHECK(x->up(x->index("p0")) == pts(*x, {"p0", "peta"}));
  CHECK(x->up(x->index("peta")) == pts(*x, {"peta"}));
  CHECK(x->up2(x->index("p0"), x->index("pinf")) == pts(*x, {"peta"}));
  for (int p = 0; p < x->size(); ++p) {
    auto u = x->up(p);
    CHECK(x->is_open(u));
    CHECK(std::find(u.begin(), u.end(), p) != u.end());
    for (int q = 0; q < x->size(); ++q) CHECK((std::find(u.begin(), u.end(), q) != u.end()) == x->leq(p, q));
  }
  CHECK_THROWS_AS(open_subspace(x, pts(*x, {"p0"})), NotOpen);
}

TEST_CASE("composition defects are reported") {
  std::string text = fixture_text("p1_charts");
  // Break the identification of the two generic points.
  auto pos = text.find("\"x\": \"y^-1\"}, \"extra_invert\": []");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 11, "\"x\": \"2*y^-1\"");
  auto doc = parse_document(text);
  CHECK_FALSE(doc.space->validate().empty());
}

TEST_CASE("sections of the projective line and the doubled line") {
  auto x = fixture("p1").space;
  CHECK(sections_dimension(*x, x->all_points(), Degree{0}) == 1);
  for (int d = 1; d <= 4; ++d) {
    CHECK(sections_dimension(*x, x->all_points(), Degree{d}) == 0);
    CHECK(sections_dimension(*x, x->all_points(), Degree{-d}) == 0);
  }
  auto y = fixture("doubled_line").space;
  for (int d = -3; d <= 4; ++d) CHECK(sections_dimension(*y, y->all_points(), Degree{d}) == (d >= 0 ? 1 : 0));
  // U_x: the stalk itself.
  for (int d = -3; d <= 3; ++d) {
    int p0 = x->index("p0");
    CHECK(sections_dimension(*x, x->up(p0), Degree{d}) == (d >= 0 ? 1 : 0));
  }
}

TEST_CASE("kolmogorov quotient") {
  auto doc = fixture("p1_charts");
  auto q = kolmogorov_quotient(doc.space);
  CHECK(q.space->size() == 3);
  CHECK(q.space->is_t0());
  CHECK(q.map.validate().empty());
  auto p1 = fixture("p1").space;
  auto iso = find_isomorphism(q.space, doc.map("collapse")->target());
  CHECK(iso.has_value());
  auto t0 = kolmogorov_quotient(p1);
  CHECK(t0.space->size() == 3);
}

TEST_CASE("products and diagonal") {
  auto x = fixture("p1").space;
  auto pp = product_over_field(x, x);
  CHECK(pp->size() == 9);
  CHECK(pp->validate().empty());
  auto d = diagonal(x);
  CHECK(d.validate().empty());
  auto pt = fixture("point(Q[t])").space;
  auto xp = product_over_field(x, fixture("point").space);
  CHECK(find_isomorphism(xp, x).has_value());
  CHECK(xp->size() == 3);
  auto ab = product_over_field(fixture("point(Q[a])").space, pt);
  CHECK(ab->size() == 1);
  CHECK(ab->stalk(0)->nvars() == 2);
}

TEST_CASE("fiber product over the identity and the cylinder") {
  auto x = fixture("p1").space;
  auto id = SpaceMap::identity(x);
  auto fp = fiber_product(id, id);
  CHECK(fp.space->size() == 3);
  CHECK(fp.first.validate().empty());
  CHECK(fp.second.validate().empty());
  auto c = cylinder(id);
  CHECK(c.space->size() == 6);
  CHECK(c.space->validate().empty());
  CHECK(c.inclusion.then(c.retraction).same_as(id));
  for (int y = 0; y < x->size(); ++y) CHECK(c.space->stalk(x->size() + y).get() == x->stalk(y).get());
}

TEST_CASE("point adjunction") {
  auto x = fixture("p1").space;
  int p0 = x->index("p0");
  auto a = adjoin_point(x, x->up(p0));
  CHECK(a.space->size() == 4);
  CHECK(a.space->validate().empty());
  CHECK_THROWS_AS(adjoin_point(x, x->all_points()), SectionsNotPresented);
  auto doc = fixture("affine_plane");
  auto s = doc.section("X");
  REQUIRE(s);
  CHECK(certify_sections(*doc.space, s->points, s->presentation));
  auto b = adjoin_point(doc.space, s->points, s->presentation, "cone");
  CHECK(b.space->size() == 4);
  CHECK(b.space->validate().empty());
  CHECK(b.space->minimum(b.space->all_points()) == b.point);
}

TEST_CASE("document round trip") {
  for (auto name : fixture_names()) {
    if (name == "point(R)") name = "point(F_7[t])";
    CAPTURE(name);
    std::string t1 = canonical_document(fixture_text(name));
    std::string t2 = canonical_document(t1);
    CHECK(t1 == t2);
    auto doc = fixture(name);
    std::string printed = print_space(*doc.space);
    auto again = parse_document(printed);
    CHECK(print_space(*again.space) == printed);
    CHECK(find_isomorphism(again.space, doc.space).has_value());
  }
}

TEST_CASE("parse errors carry positions and paths") {
  try {
    parse_document("{\n  \"field\": \"Q\",\n  \"points\": [\"a\" \"b\"]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_document(R"({"field": "Q", "points": ["a"], "stalks": {"a": {"vars": "x"}}})");
    FAIL("expected a schema error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/stalks/a/vars") != std::string::npos);
  }
  CHECK_THROWS_AS(fixture("nonexistent"), Error);
}
