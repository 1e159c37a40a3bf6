#include "finsch/fixtures.hpp"

#include <sstream>

#include "finsch/errors.hpp"

namespace finsch {

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string power(const std::string& v, int d) {
  if (d == 0) return "1";
  if (d == 1) return v;
  return v + "^" + std::to_string(d);
}

// O(d) on the three-point projective line.
std::string p1_twist(int d) {
  std::ostringstream s;
  s << quote("O(" + std::to_string(d) + ")") << ": {\n"
    << "      \"stalks\": {\n"
    << "        \"p0\": {\"gens\": 1, \"shifts\": [[0]]},\n"
    << "        \"pinf\": {\"gens\": 1, \"shifts\": [[" << d << "]]},\n"
    << "        \"peta\": {\"gens\": 1, \"shifts\": [[0]]}\n"
    << "      },\n"
    << "      \"restrictions\": [\n"
    << "        {\"from\": \"p0\", \"to\": \"peta\", \"images\": [[\"1\"]]},\n"
    << "        {\"from\": \"pinf\", \"to\": \"peta\", \"images\": [[" << quote(power("x", d)) << "]]}\n"
    << "      ]\n"
    << "    }";
  return s.str();
}

// O(d) on the seven-point projective plane; the generator at a point lies in
// degree d times the weight of the coordinate cutting out chart 0.
std::string p2_twist(int d) {
  struct P {
    const char* name;
    int a, b;
  };
  const P pts[] = {{"c0", 0, 0}, {"c1", d, 0}, {"c2", 0, d}, {"c01", 0, 0},
                   {"c02", 0, 0}, {"c12", d, 0}, {"c012", 0, 0}};
  std::ostringstream s;
  s << quote("O(" + std::to_string(d) + ")") << ": {\n      \"stalks\": {\n";
  for (size_t i = 0; i < 7; ++i)
    s << "        " << quote(pts[i].name) << ": {\"gens\": 1, \"shifts\": [[" << pts[i].a << ", " << pts[i].b << "]]}"
      << (i + 1 < 7 ? ",\n" : "\n");
  // Transition functions: c1 -> c01 is x^d, c2 -> c02 is y^d, c12 -> c012 is x^d.
  std::string xd = power("x", d), yd = power("y", d), vd = power("v", d);
  s << "      },\n      \"restrictions\": [\n"
    << "        {\"from\": \"c0\", \"to\": \"c01\", \"images\": [[\"1\"]]},\n"
    << "        {\"from\": \"c0\", \"to\": \"c02\", \"images\": [[\"1\"]]},\n"
    << "        {\"from\": \"c1\", \"to\": \"c01\", \"images\": [[" << quote(xd) << "]]},\n"
    << "        {\"from\": \"c1\", \"to\": \"c12\", \"images\": [[\"1\"]]},\n"
    << "        {\"from\": \"c2\", \"to\": \"c02\", \"images\": [[" << quote(yd) << "]]},\n"
    << "        {\"from\": \"c2\", \"to\": \"c12\", \"images\": [[" << quote(vd) << "]]},\n"
    << "        {\"from\": \"c01\", \"to\": \"c012\", \"images\": [[\"1\"]]},\n"
    << "        {\"from\": \"c02\", \"to\": \"c012\", \"images\": [[\"1\"]]},\n"
    << "        {\"from\": \"c12\", \"to\": \"c012\", \"images\": [[" << quote(xd) << "]]}\n"
    << "      ]\n    }";
  return s.str();
}

const char* kP1Space = R"J({
  "field": "Q",
  "points": ["p0", "pinf", "peta"],
  "order": [["p0", "peta"], ["pinf", "peta"]],
  "stalks": {
    "p0": {"vars": ["x"], "weights": [[1]]},
    "pinf": {"vars": ["y"], "weights": [[-1]]},
    "peta": {"vars": ["x"], "invert": ["x"], "weights": [[1]]}
  },
  "restrictions": [
    {"from": "p0", "to": "peta", "images": {"x": "x"}, "extra_invert": ["x"]},
    {"from": "pinf", "to": "peta", "images": {"y": "x^-1"}, "extra_invert": ["y"]}
  ],
  "maps": {
    "id": {
      "points": {"p0": "p0", "pinf": "pinf", "peta": "peta"},
      "comorphisms": {
        "p0": {"images": {"x": "x"}},
        "pinf": {"images": {"y": "y"}},
        "peta": {"images": {"x": "x"}}
      }
    },
    "swap": {
      "points": {"p0": "pinf", "pinf": "p0", "peta": "peta"},
      "comorphisms": {
        "p0": {"images": {"y": "x"}},
        "pinf": {"images": {"x": "y"}},
        "peta": {"images": {"x": "x^-1"}}
      }
    }
  },
  "roofs": {
    "identity": {"left": "id", "right": "id"},
    "swap": {"left": "id", "right": "swap"}
  },
  "modules": {
)J";

// Chart 0 is k[x,y]; chart 1 is k[1/x, y/x] in the variables u, v; chart 2 is
// k[1/y, x/y] in the variables s, t.
const char* kP2Space = R"J({
  "field": "Q",
  "points": ["c0", "c1", "c2", "c01", "c02", "c12", "c012"],
  "order": [["c0", "c01"], ["c0", "c02"], ["c1", "c01"], ["c1", "c12"], ["c2", "c02"], ["c2", "c12"],
            ["c01", "c012"], ["c02", "c012"], ["c12", "c012"]],
  "stalks": {
    "c0": {"vars": ["x", "y"], "weights": [[1, 0], [0, 1]]},
    "c1": {"vars": ["u", "v"], "weights": [[-1, 0], [-1, 1]]},
    "c2": {"vars": ["s", "t"], "weights": [[0, -1], [1, -1]]},
    "c01": {"vars": ["x", "y"], "invert": ["x"], "weights": [[1, 0], [0, 1]]},
    "c02": {"vars": ["x", "y"], "invert": ["y"], "weights": [[1, 0], [0, 1]]},
    "c12": {"vars": ["u", "v"], "invert": ["v"], "weights": [[-1, 0], [-1, 1]]},
    "c012": {"vars": ["x", "y"], "invert": ["x", "y"], "weights": [[1, 0], [0, 1]]}
  },
  "restrictions": [
    {"from": "c0", "to": "c01", "images": {"x": "x", "y": "y"}, "extra_invert": ["x"]},
    {"from": "c0", "to": "c02", "images": {"x": "x", "y": "y"}, "extra_invert": ["y"]},
    {"from": "c1", "to": "c01", "images": {"u": "x^-1", "v": "y*x^-1"}, "extra_invert": ["u"]},
    {"from": "c1", "to": "c12", "images": {"u": "u", "v": "v"}, "extra_invert": ["v"]},
    {"from": "c2", "to": "c02", "images": {"s": "y^-1", "t": "x*y^-1"}, "extra_invert": ["s"]},
    {"from": "c2", "to": "c12", "images": {"s": "u*v^-1", "t": "v^-1"}, "extra_invert": ["t"]},
    {"from": "c01", "to": "c012", "images": {"x": "x", "y": "y"}, "extra_invert": ["y"]},
    {"from": "c02", "to": "c012", "images": {"x": "x", "y": "y"}, "extra_invert": ["x"]},
    {"from": "c12", "to": "c012", "images": {"u": "x^-1", "v": "y*x^-1"}, "extra_invert": ["u"]}
  ],
  "modules": {
)J";

const char* kDoubledLine = R"J({
  "field": "Q",
  "points": ["o1", "o2", "g"],
  "order": [["o1", "g"], ["o2", "g"]],
  "stalks": {
    "o1": {"vars": ["x"], "weights": [[1]]},
    "o2": {"vars": ["x"], "weights": [[1]]},
    "g": {"vars": ["x"], "invert": ["x"], "weights": [[1]]}
  },
  "restrictions": [
    {"from": "o1", "to": "g", "images": {"x": "x"}, "extra_invert": ["x"]},
    {"from": "o2", "to": "g", "images": {"x": "x"}, "extra_invert": ["x"]}
  ]
}
)J";

const char* kAffineLine = R"J({
  "field": "Q",
  "points": ["o", "g"],
  "order": [["o", "g"]],
  "stalks": {
    "o": {"vars": ["x"], "weights": [[1]]},
    "g": {"vars": ["x"], "invert": ["x"], "weights": [[1]]}
  },
  "restrictions": [
    {"from": "o", "to": "g", "images": {"x": "x"}, "extra_invert": ["x"]}
  ]
}
)J";

const char* kPseudoCircle = R"J({
  "field": "Q",
  "points": ["a", "b", "c", "d"],
  "order": [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]],
  "stalks": {
    "a": {"vars": []},
    "b": {"vars": []},
    "c": {"vars": []},
    "d": {"vars": []}
  },
  "restrictions": [
    {"from": "a", "to": "c", "images": {}, "extra_invert": []},
    {"from": "a", "to": "d", "images": {}, "extra_invert": []},
    {"from": "b", "to": "c", "images": {}, "extra_invert": []},
    {"from": "b", "to": "d", "images": {}, "extra_invert": []}
  ]
}
)J";

const char* kPlaneDoubledOrigin = R"J({
  "field": "Q",
  "points": ["o1", "o2", "a", "b", "ab"],
  "order": [["o1", "a"], ["o1", "b"], ["o2", "a"], ["o2", "b"], ["a", "ab"], ["b", "ab"]],
  "stalks": {
    "o1": {"vars": ["x", "y"], "weights": [[1, 0], [0, 1]]},
    "o2": {"vars": ["x", "y"], "weights": [[1, 0], [0, 1]]},
    "a": {"vars": ["x", "y"], "invert": ["x"], "weights": [[1, 0], [0, 1]]},
    "b": {"vars": ["x", "y"], "invert": ["y"], "weights": [[1, 0], [0, 1]]},
    "ab": {"vars": ["x", "y"], "invert": ["x", "y"], "weights": [[1, 0], [0, 1]]}
  },
  "restrictions": [
    {"from": "o1", "to": "a", "images": {"x": "x", "y": "y"}, "extra_invert": ["x"]},
    {"from": "o1", "to": "b", "images": {"x": "x", "y": "y"}, "extra_invert": ["y"]},
    {"from": "o2", "to": "a", "images": {"x": "x", "y": "y"}, "extra_invert": ["x"]},
    {"from": "o2", "to": "b", "images": {"x": "x", "y": "y"}, "extra_invert": ["y"]},
    {"from": "a", "to": "ab", "images": {"x": "x", "y": "y"}, "extra_invert": ["y"]},
    {"from": "b", "to": "ab", "images": {"x": "x", "y": "y"}, "extra_invert": ["x"]}
  ]
}
)J";

// The line covered by D(x) and D(x-1), without a point for the whole line;
// O(X) = k[x] is supplied as a presentation.
const char* kLineTwoCharts = R"J({
  "field": "Q",
  "points": ["a", "b", "ab"],
  "order": [["a", "ab"], ["b", "ab"]],
  "stalks": {
    "a": {"vars": ["x"], "invert": ["x"]},
    "b": {"vars": ["x"], "invert": ["x - 1"]},
    "ab": {"vars": ["x"], "invert": ["x", "x - 1"]}
  },
  "restrictions": [
    {"from": "a", "to": "ab", "images": {"x": "x"}, "extra_invert": ["x - 1"]},
    {"from": "b", "to": "ab", "images": {"x": "x"}, "extra_invert": ["x"]}
  ],
  "sections": {
    "X": {
      "points": ["a", "b", "ab"],
      "algebra": {"vars": ["x"]},
      "to_points": {
        "a": {"images": {"x": "x"}, "extra_invert": ["x"]},
        "b": {"images": {"x": "x"}, "extra_invert": ["x - 1"]},
        "ab": {"images": {"x": "x"}, "extra_invert": ["x*(x - 1)"]}
      }
    }
  }
}
)J";

// The plane covered by D(x) and D(x-1).
const char* kAffinePlane = R"J({
  "field": "Q",
  "points": ["a", "b", "ab"],
  "order": [["a", "ab"], ["b", "ab"]],
  "stalks": {
    "a": {"vars": ["x", "y"], "invert": ["x"]},
    "b": {"vars": ["x", "y"], "invert": ["x - 1"]},
    "ab": {"vars": ["x", "y"], "invert": ["x", "x - 1"]}
  },
  "restrictions": [
    {"from": "a", "to": "ab", "images": {"x": "x", "y": "y"}, "extra_invert": ["x - 1"]},
    {"from": "b", "to": "ab", "images": {"x": "x", "y": "y"}, "extra_invert": ["x"]}
  ],
  "sections": {
    "X": {
      "points": ["a", "b", "ab"],
      "algebra": {"vars": ["x", "y"]},
      "to_points": {
        "a": {"images": {"x": "x", "y": "y"}, "extra_invert": ["x"]},
        "b": {"images": {"x": "x", "y": "y"}, "extra_invert": ["x - 1"]},
        "ab": {"images": {"x": "x", "y": "y"}, "extra_invert": ["x*(x - 1)"]}
      }
    }
  }
}
)J";

// The two charts of the projective line with their generic points declared
// equivalent, and the map onto the three-point model collapsing them.
const char* kP1Charts = R"J({
  "field": "Q",
  "points": ["p0", "pinf", "e0", "einf"],
  "order": [["p0", "e0"], ["pinf", "einf"], ["e0", "einf"], ["einf", "e0"]],
  "stalks": {
    "p0": {"vars": ["x"], "weights": [[1]]},
    "pinf": {"vars": ["y"], "weights": [[-1]]},
    "e0": {"vars": ["x"], "invert": ["x"], "weights": [[1]]},
    "einf": {"vars": ["y"], "invert": ["y"], "weights": [[-1]]}
  },
  "restrictions": [
    {"from": "p0", "to": "e0", "images": {"x": "x"}, "extra_invert": ["x"]},
    {"from": "pinf", "to": "einf", "images": {"y": "y"}, "extra_invert": ["y"]},
    {"from": "e0", "to": "einf", "images": {"x": "y^-1"}, "extra_invert": []},
    {"from": "einf", "to": "e0", "images": {"y": "x^-1"}, "extra_invert": []}
  ],
  "maps": {
    "collapse": {
      "target": TARGET,
      "points": {"p0": "p0", "pinf": "pinf", "e0": "peta", "einf": "peta"},
      "comorphisms": {
        "p0": {"images": {"x": "x"}},
        "pinf": {"images": {"y": "y"}},
        "e0": {"images": {"x": "x"}},
        "einf": {"images": {"x": "y^-1"}}
      }
    }
  }
}
)J";

// The projective line with the point at infinity replaced by a second copy of
// the generic point, sharing no point above it with the first.
const char* kP1Defect = R"J({
  "field": "Q",
  "points": ["p0", "peta", "peta2"],
  "order": [["p0", "peta"], ["p0", "peta2"]],
  "stalks": {
    "p0": {"vars": ["x"]},
    "peta": {"vars": ["x"], "invert": ["x"]},
    "peta2": {"vars": ["x"], "invert": ["x"]}
  },
  "restrictions": [
    {"from": "p0", "to": "peta", "images": {"x": "x"}, "extra_invert": ["x"]},
    {"from": "p0", "to": "peta2", "images": {"x": "x"}, "extra_invert": ["x"]}
  ]
}
)J";

std::string p1_base() {
  std::string s = kP1Space;
  return s.substr(0, s.find("\"maps\""));
}

std::string p1_plain() {
  std::string b = p1_base();
  auto pos = b.rfind(',');
  return b.substr(0, pos) + "\n}\n";
}

std::string point_text(const std::string& arg) {
  std::string field = "Q";
  std::string vars = arg;
  auto lb = arg.find('[');
  if (lb != std::string::npos) {
    auto rb = arg.find(']', lb);
    if (rb == std::string::npos) throw Error("malformed ring '" + arg + "'");
    field = arg.substr(0, lb);
    vars = arg.substr(lb + 1, rb - lb - 1);
  }
  Field::parse(field);
  std::ostringstream s;
  s << "{\n  \"field\": " << quote(field) << ",\n  \"points\": [\"*\"],\n  \"stalks\": {\"*\": {\"vars\": [";
  std::stringstream in(vars);
  std::string v;
  bool first = true;
  while (std::getline(in, v, ',')) {
    std::string t;
    for (char c : v)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) continue;
    s << (first ? "" : ", ") << quote(t);
    first = false;
  }
  s << "]}}\n}\n";
  return s.str();
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"p1",          "p2",           "doubled_line",  "affine_line", "pseudo_circle",
          "plane_doubled_origin", "line_two_charts", "affine_plane", "p1_charts",   "p1_defect",
          "point(R)"};
}

std::string fixture_text(const std::string& name) {
  if (name == "p1") {
    std::string s = kP1Space;
    for (int d = -5; d <= 5; ++d) s += "    " + p1_twist(d) + (d < 5 ? ",\n" : "\n");
    return s + "  }\n}\n";
  }
  if (name == "p2") {
    std::string s = kP2Space;
    for (int d = -3; d <= 1; ++d) s += "    " + p2_twist(d) + (d < 1 ? ",\n" : "\n");
    return s + "  }\n}\n";
  }
  if (name == "doubled_line") return kDoubledLine;
  if (name == "affine_line") return kAffineLine;
  if (name == "pseudo_circle") return kPseudoCircle;
  if (name == "plane_doubled_origin") return kPlaneDoubledOrigin;
  if (name == "line_two_charts") return kLineTwoCharts;
  if (name == "affine_plane") return kAffinePlane;
  if (name == "p1_defect") return kP1Defect;
  if (name == "p1_charts") {
    std::string s = kP1Charts;
    std::string target = p1_plain();
    std::string indented;
    for (char c : target.substr(0, target.size() - 1)) {
      indented += c;
      if (c == '\n') indented += "      ";
    }
    s.replace(s.find("TARGET"), 6, indented);
    return s;
  }
  if (name == "point") return point_text("");
  if (name.rfind("point(", 0) == 0 && name.back() == ')') return point_text(name.substr(6, name.size() - 7));
  throw Error("unknown fixture '" + name + "'");
}

SpaceDocument fixture(const std::string& name, const std::optional<Field>& field) {
  return parse_document(fixture_text(name), field);
}

}  // namespace finsch
