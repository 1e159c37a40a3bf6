#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finsch/classify.hpp"
#include "finsch/qcoh.hpp"
#include "finsch/space.hpp"

namespace finsch {

struct NamedMap {
  std::string name;
  SpaceMap map;
};

struct NamedSections {
  std::string name;
  PointSet points;
  SectionPresentation presentation;
};

struct RoofRef {
  std::string name;
  std::string left;
  std::string right;
};

// A parsed space file.
struct SpaceDocument {
  SpacePtr space;
  Battery modules;
  std::vector<NamedMap> maps;
  std::vector<NamedSections> sections;
  std::vector<RoofRef> roofs;

  const SheafModule* module(const std::string& name) const;
  const SpaceMap* map(const std::string& name) const;
  const NamedSections* section(const std::string& name) const;
};

// Throws ParseError naming the line and column of malformed text, or the
// path of the offending node for schema violations.
SpaceDocument parse_document(const std::string& text, const std::optional<Field>& field = std::nullopt);

// The document tree printed in canonical form.
std::string canonical_document(const std::string& text);

// A space as a document holding only the space.
std::string print_space(const FinSpace& x);

}  // namespace finsch
