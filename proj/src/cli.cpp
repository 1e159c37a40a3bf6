#include "finsch/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "finsch/classify.hpp"
#include "finsch/cohomology.hpp"
#include "finsch/errors.hpp"
#include "finsch/fixtures.hpp"
#include "finsch/io.hpp"
#include "finsch/roofs.hpp"

namespace finsch {

namespace {

using json = nlohmann::ordered_json;

struct InputError : Error {
  using Error::Error;
};

struct Settings {
  std::optional<Field> field;
  std::string window = "-10..10";
  std::string format = "text";
};

std::string read_input(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) {
    try {
      return fixture_text(source.substr(8));
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }
  std::ifstream in(source);
  if (!in) throw InputError("cannot read '" + source + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

SpaceDocument load(const std::string& source, const Settings& s) {
  try {
    return parse_document(read_input(source), s.field);
  } catch (const ParseError& e) {
    throw InputError(source + ": " + e.what());
  }
}

std::pair<int, int> parse_range(const std::string& t) {
  auto dots = t.find("..");
  if (dots == std::string::npos) throw InputError("window '" + t + "' is not of the form a..b");
  try {
    size_t used = 0;
    int lo = std::stoi(t.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument(t);
    std::string rest = t.substr(dots + 2);
    int hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(t);
    if (lo > hi) throw InputError("empty window '" + t + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("window '" + t + "' is not of the form a..b");
  }
}

// "a..b" for every grading component, or one comma-separated range per component.
Window parse_window(const std::string& text, int rank) {
  std::vector<std::pair<int, int>> ranges;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) ranges.push_back(parse_range(part));
  if (ranges.size() == 1) ranges.resize(std::max(rank, 1), ranges.front());
  if (rank > 0 && static_cast<int>(ranges.size()) != rank)
    throw InputError("window has " + std::to_string(ranges.size()) + " ranges for grading rank " +
                     std::to_string(rank));
  return Window{ranges};
}

int exit_for(const std::vector<Verdict>& vs) {
  bool undecided = false;
  for (auto v : vs) {
    if (v == Verdict::False) return kExitFalse;
    if (v == Verdict::Undecided) undecided = true;
  }
  return undecided ? kExitUndecided : kExitTrue;
}

json report_json(const ClassReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  if (!r.note.empty()) j["note"] = r.note;
  json ev = json::array();
  for (const auto& e : r.evidence) ev.push_back({{"criterion", e.criterion}, {"location", e.location}, {"outcome", e.outcome}});
  j["evidence"] = ev;
  return j;
}

std::string conclusion(const std::string& property, Verdict v) {
  if (v == Verdict::True) return property;
  if (v == Verdict::False) return "not " + property;
  return property + ": undecided";
}

json table_json(const CohomologyTable& t) {
  json j;
  j["backend"] = t.backend == Backend::Graded ? "graded" : "vector-space";
  if (t.window) j["window"] = t.window->to_string();
  json degrees = json::array();
  for (const auto& d : t.degrees) degrees.push_back(d);
  j["degrees"] = degrees;
  j["dims"] = t.dims;
  json totals = json::array();
  for (int i = 0; i <= t.max_index(); ++i) totals.push_back(t.total(i));
  j["totals"] = totals;
  return j;
}

std::string totals_text(const CohomologyTable& t) {
  std::string s;
  for (int i = 0; i <= t.max_index(); ++i) s += "H^" + std::to_string(i) + " total dim " + std::to_string(t.total(i)) + "\n";
  return s;
}

SheafModule find_module(const SpaceDocument& doc, const std::string& name) {
  if (const auto* m = doc.module(name)) return *m;
  if (name == "O") return SheafModule::structure_sheaf(doc.space);
  throw InputError("no module named '" + name + "'");
}

const SpaceMap& find_map(const SpaceDocument& doc, const std::string& name) {
  if (const auto* m = doc.map(name)) return *m;
  throw InputError("no map named '" + name + "'");
}

// Collects the report of one command.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> options;
  std::string text;
  json data = json::object();
  int code = kExitTrue;

  void emit(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      json j;
      j["command"] = command;
      json o = json::object();
      for (const auto& [k, v] : options) o[k] = v;
      j["options"] = o;
      j["result"] = data;
      j["exit"] = code;
      out << j.dump(2) << "\n";
      return;
    }
    out << "command: " << command << "\n";
    for (const auto& [k, v] : options) out << k << ": " << v << "\n";
    out << text;
  }
};

json space_json(const FinSpace& x) { return json::parse(print_space(x)); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  if (const char* f = std::getenv("FINSCH_FIELD")) {
    try {
      s.field = Field::parse(f);
    } catch (const Error& e) {
      err << "error: FINSCH_FIELD: " << e.what() << "\n";
      return kExitInputError;
    }
  }
  if (const char* w = std::getenv("FINSCH_WINDOW")) s.window = w;

  CLI::App app{"Schematic finite spaces: classification, cohomology, minimal models and roofs"};
  app.require_subcommand(1);
  std::string field_text, window_text, format = "text";
  app.add_option("--field", field_text, "coefficient field: Q or F_p (default Q, or FINSCH_FIELD)");
  app.add_option("--window", window_text, "degree window a..b, or a..b,c..d per component (default -10..10)");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

  std::string input, input2, module = "O", map_name, backend = "auto", name;
  std::vector<std::string> pair;
  bool f_sch = false, f_aff = false, f_semi = false, f_fr = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--field", field_text, "coefficient field");
    c->add_option("--window", window_text, "degree window");
    c->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "parse and check a space file");
  validate->add_option("input", input, "space file or builtin:NAME")->required();
  auto* classify = app.add_subcommand("classify", "decide space or map classes");
  classify->add_option("input", input, "space file or builtin:NAME")->required();
  classify->add_flag("--schematic", f_sch);
  classify->add_flag("--affine", f_aff);
  classify->add_flag("--semiseparated", f_semi);
  classify->add_flag("--fr", f_fr);
  classify->add_option("--map", map_name, "classify the named map instead");
  auto* minimize = app.add_subcommand("minimize", "minimal model");
  minimize->add_option("input", input, "space file or builtin:NAME")->required();
  auto* cohom = app.add_subcommand("cohomology", "cohomology of a module");
  cohom->add_option("input", input, "space file or builtin:NAME")->required();
  cohom->add_option("--module", module, "module name (O is the structure sheaf)");
  cohom->add_option("--backend", backend)->check(CLI::IsMember({"auto", "graded", "vector"}));
  auto* rfi = app.add_subcommand("rfi", "higher direct images");
  rfi->add_option("input", input, "space file or builtin:NAME")->required();
  rfi->add_option("--map", map_name)->required();
  rfi->add_option("--module", module, "module on the source (O is the structure sheaf)");
  rfi->add_option("--backend", backend)->check(CLI::IsMember({"auto", "graded", "vector"}));
  auto* product = app.add_subcommand("product", "product over the field");
  product->add_option("first", input)->required();
  product->add_option("second", input2)->required();
  auto* fiber = app.add_subcommand("fiber", "fiber product of two maps");
  fiber->add_option("input", input)->required();
  fiber->add_option("--maps", pair)->expected(2)->required();
  auto* cyl = app.add_subcommand("cylinder", "cylinder of a map");
  cyl->add_option("input", input)->required();
  cyl->add_option("--map", map_name)->required();
  auto* roofeq = app.add_subcommand("roof-eq", "decide equality of two roofs");
  roofeq->add_option("input", input)->required();
  roofeq->add_option("--roofs", pair)->expected(2)->required();
  auto* generate = app.add_subcommand("generate", "print a built-in fixture");
  generate->add_option("name", name)->required();
  for (auto* c : {validate, classify, minimize, cohom, rfi, product, fiber, cyl, roofeq, generate}) add_common(c);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  Report r;
  try {
    if (!field_text.empty()) s.field = Field::parse(field_text);
    if (!window_text.empty()) s.window = window_text;
    s.format = format;
    auto* sub = app.get_subcommands().front();
    r.command = sub->get_name();

    if (sub == generate) {
      std::string text;
      try {
        text = fixture_text(name);
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      if (s.field) text = print_space(*parse_document(text, s.field).space);
      out << canonical_document(text);
      return kExitTrue;
    }

    auto doc = load(input, s);
    auto& x = doc.space;
    r.options.push_back({"input", input});
    r.options.push_back({"field", x->field().name()});
    Window window = parse_window(s.window, x->grading_rank());
    if (x->graded()) r.options.push_back({"window", window.to_string()});
    std::optional<Window> win;
    if (x->graded()) win = window;

    if (sub == validate) {
      std::vector<std::string> issues = x->validate();
      for (const auto& m : doc.maps)
        for (const auto& i : m.map.validate()) issues.push_back("map " + m.name + ": " + i);
      for (const auto& [n, m] : doc.modules)
        for (const auto& i : m.validate()) issues.push_back("module " + n + ": " + i);
      r.data["points"] = x->size();
      r.data["issues"] = issues;
      r.text = "points: " + std::to_string(x->size()) + "\n";
      for (const auto& i : issues) r.text += "issue: " + i + "\n";
      r.text += issues.empty() ? "valid\n" : "invalid\n";
      r.code = issues.empty() ? kExitTrue : kExitFalse;
    } else if (sub == classify && !map_name.empty()) {
      const SpaceMap& f = find_map(doc, map_name);
      r.options.push_back({"map", map_name});
      MapReport m = classify_map(f, win);
      std::vector<std::pair<std::string, const ClassReport*>> rows = {
          {"schematic", &m.schematic}, {"affine", &m.affine}, {"flat", &m.flat},
          {"faithfully_flat", &m.faithfully_flat}, {"quasi_iso", &m.quasi_iso},
          {"quasi_open_immersion", &m.quasi_open}, {"quasi_closed_immersion", &m.quasi_closed}};
      for (const auto& [k, rep] : rows) {
        r.data[k] = report_json(*rep);
        r.text += rep->to_text(k);
      }
      // the map verdict is informational; exit reflects the schematic class
      r.code = exit_for({m.schematic.verdict});
    } else if (sub == classify) {
      if (!f_sch && !f_aff && !f_semi && !f_fr) f_fr = f_sch = f_aff = f_semi = true;
      std::vector<Verdict> vs;
      auto add = [&](const std::string& key, const std::string& prop, const ClassReport& rep) {
        r.data[key] = report_json(rep);
        r.text += rep.to_text(key) + "conclusion: " + conclusion(prop, rep.verdict) + "\n";
        vs.push_back(rep.verdict);
      };
      if (f_fr) add("fr", "an fr-space", is_fr_space(*x));
      if (f_sch) add("schematic", "schematic", is_schematic(*x));
      if (f_aff) {
        AffineOptions o;
        o.window = win;
        o.battery = doc.modules;
        if (const auto* sec = doc.section("X")) o.sections = sec->presentation;
        add("affine", "affine", is_affine(x, o));
      }
      if (f_semi) add("semiseparated", "semiseparated", is_semiseparated(x, win));
      r.code = exit_for(vs);
    } else if (sub == minimize) {
      auto mm = minimal_model(x);
      std::vector<std::string> removed;
      for (int p : mm.removed) removed.push_back(mm.quotient.space->name(p));
      r.data["quotient_points"] = mm.quotient.space->size();
      r.data["removed"] = removed;
      r.data["space"] = space_json(*mm.space);
      r.text = "kolmogorov quotient: " + std::to_string(mm.quotient.space->size()) + " points\nremoved:";
      for (const auto& n : removed) r.text += " " + n;
      r.text += "\nminimal model:\n" + print_space(*mm.space);
    } else if (sub == cohom || sub == rfi) {
      std::string mod_name = module;
      r.options.push_back({"module", mod_name});
      auto pick_backend = [&](const SheafModule& m) {
        if (backend == "graded") return Backend::Graded;
        if (backend == "vector") return Backend::VectorSpace;
        return m.graded() ? Backend::Graded : Backend::VectorSpace;
      };
      if (sub == cohom) {
        SheafModule m = find_module(doc, mod_name);
        auto t = cohomology(m, pick_backend(m), win);
        r.data = table_json(t);
        r.text = t.to_text() + totals_text(t);
      } else {
        const SpaceMap& f = find_map(doc, map_name);
        r.options.push_back({"map", map_name});
        if (f.source().get() != x.get() && mod_name != "O")
          throw InputError("modules of the file live on its space, not on the source of '" + map_name + "'");
        SheafModule m = f.source().get() == x.get() ? find_module(doc, mod_name) : SheafModule::structure_sheaf(f.source());
        std::optional<Window> fw;
        if (f.source()->graded()) fw = parse_window(s.window, f.source()->grading_rank());
        auto tables = higher_direct_images(f, m, pick_backend(m), fw);
        json arr = json::array();
        for (int y = 0; y < f.target()->size(); ++y) {
          arr.push_back({{"point", f.target()->name(y)}, {"table", table_json(tables[y])}});
          r.text += "at U_" + f.target()->name(y) + ":\n" + tables[y].to_text() + totals_text(tables[y]);
        }
        r.data["stalks"] = arr;
      }
    } else if (sub == product) {
      auto doc2 = load(input2, s);
      auto p = product_over_field(x, doc2.space);
      r.options.push_back({"second", input2});
      r.data["space"] = space_json(*p);
      r.text = print_space(*p);
    } else if (sub == fiber) {
      auto fp = fiber_product(find_map(doc, pair[0]), find_map(doc, pair[1]));
      r.options.push_back({"maps", pair[0] + " " + pair[1]});
      r.data["space"] = space_json(*fp.space);
      r.text = print_space(*fp.space);
    } else if (sub == cyl) {
      auto c = cylinder(find_map(doc, map_name));
      r.options.push_back({"map", map_name});
      r.data["space"] = space_json(*c.space);
      r.text = print_space(*c.space);
    } else if (sub == roofeq) {
      auto roof = [&](const std::string& n) {
        auto it = std::find_if(doc.roofs.begin(), doc.roofs.end(), [&](const RoofRef& ref) { return ref.name == n; });
        if (it == doc.roofs.end()) throw InputError("no roof named '" + n + "'");
        return make_roof(find_map(doc, it->left), find_map(doc, it->right));
      };
      r.options.push_back({"roofs", pair[0] + " " + pair[1]});
      bool eq = roof_equal(roof(pair[0]), roof(pair[1]));
      r.data["equal"] = eq;
      r.text = eq ? "roofs are equal\n" : "roofs are not equal\n";
      r.code = eq ? kExitTrue : kExitFalse;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Uncertified& e) {
    r.text += std::string("undecided: ") + e.what() + "\n";
    r.data["undecided"] = e.what();
    r.code = kExitUndecided;
  } catch (const NotLocalizationPresented& e) {
    r.text += std::string("undecided: ") + e.what() + "\n";
    r.data["undecided"] = e.what();
    r.code = kExitUndecided;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  r.emit(out, s.format);
  return r.code;
}

}  // namespace finsch
