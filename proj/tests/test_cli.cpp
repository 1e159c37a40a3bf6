#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "finsch/cli.hpp"
#include "finsch/fixtures.hpp"
#include "finsch/io.hpp"

using namespace finsch;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("classification exit codes") {
  auto r = run({"classify", "--affine", "builtin:p1"});
  CHECK(r.code == 1);
  CHECK(has(r.out, "not affine"));
  CHECK(run({"classify", "--schematic", "builtin:p1"}).code == 0);
  CHECK(run({"classify", "--semiseparated", "builtin:p1"}).code == 0);
  CHECK(run({"classify", "--schematic", "builtin:pseudo_circle"}).code == 1);
  CHECK(run({"classify", "--semiseparated", "builtin:line_two_charts"}).code == 2);
  CHECK(run({"classify", "--affine", "builtin:affine_line"}).code == 0);
  CHECK(run({"classify", "builtin:p1", "--map", "swap"}).code == 0);
}

TEST_CASE("cohomology report") {
  auto r = run({"cohomology", "builtin:p1", "--module", "O(-2)", "--window", "-5..5"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "H^1 total dim 1"));
  CHECK(has(r.out, "window: [-5,5]"));
  auto j = run({"cohomology", "builtin:pseudo_circle", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(has(j.out, "\"totals\""));
  CHECK(run({"cohomology", "builtin:p1", "--module", "nope"}).code == 3);
  CHECK(run({"cohomology", "builtin:p1", "--window", "5..-5"}).code == 3);
}

TEST_CASE("generated files classify") {
  auto g = run({"generate", "p2"});
  REQUIRE(g.code == 0);
  std::string path = "cli_test_p2.space";
  {
    std::ofstream f(path);
    f << g.out;
  }
  CHECK(run({"classify", "--schematic", path}).code == 0);
  CHECK(run({"validate", path}).code == 0);
  std::remove(path.c_str());
  CHECK(run({"generate", "unknown"}).code == 3);
  auto pt = run({"generate", "point(Q[x])"});
  CHECK(parse_document(pt.out).space->size() == 1);
}

TEST_CASE("generate, parse and print round trip") {
  for (const auto& name : {"p1", "p2", "doubled_line", "affine_line", "pseudo_circle", "point(Q[x,y])"}) {
    CAPTURE(name);
    auto g = run({"generate", name});
    REQUIRE(g.code == 0);
    CHECK(canonical_document(g.out) == g.out);
    std::string printed = print_space(*parse_document(g.out).space);
    CHECK(print_space(*parse_document(printed).space) == printed);
  }
}

TEST_CASE("input errors") {
  CHECK(run({"validate", "/nonexistent/file"}).code == 3);
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  std::string path = "cli_test_bad.space";
  {
    std::ofstream f(path);
    f << "{\n  \"field\": \"Q\",\n  \"points\": [\n}";
  }
  auto r = run({"validate", path});
  CHECK(r.code == 3);
  CHECK(has(r.err, "line"));
  std::remove(path.c_str());
}

TEST_CASE("other verbs") {
  auto m = run({"minimize", "builtin:pseudo_circle"});
  CHECK(m.code == 0);
  CHECK(has(m.out, "removed: a b"));
  CHECK(run({"rfi", "builtin:p1", "--map", "swap", "--window", "-2..2"}).code == 0);
  CHECK(run({"product", "builtin:p1", "builtin:point"}).code == 0);
  CHECK(run({"fiber", "builtin:p1", "--maps", "id", "swap"}).code == 0);
  CHECK(run({"cylinder", "builtin:p1", "--map", "swap"}).code == 0);
  CHECK(run({"roof-eq", "builtin:p1", "--roofs", "identity", "swap"}).code == 1);
  CHECK(run({"roof-eq", "builtin:p1", "--roofs", "swap", "swap"}).code == 0);
}

TEST_CASE("environment defaults") {
  setenv("FINSCH_FIELD", "F_7", 1);
  setenv("FINSCH_WINDOW", "-1..1", 1);
  auto r = run({"classify", "--fr", "builtin:p1"});
  unsetenv("FINSCH_FIELD");
  unsetenv("FINSCH_WINDOW");
  CHECK(has(r.out, "field: F_7"));
  CHECK(has(r.out, "window: [-1,1]"));
  auto o = run({"classify", "--fr", "builtin:p1", "--field", "Q"});
  CHECK(has(o.out, "field: Q"));
}
