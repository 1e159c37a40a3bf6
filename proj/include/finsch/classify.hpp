#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finsch/cohomology.hpp"
#include "finsch/qcoh.hpp"
#include "finsch/space.hpp"

namespace finsch {

enum class Verdict { True, False, Undecided };
std::string to_string(Verdict v);

struct Evidence {
  std::string criterion;
  std::string location;
  std::string outcome;  // pass, fail or skip
};

struct ClassReport {
  Verdict verdict = Verdict::True;
  std::string reason;
  std::vector<Evidence> evidence;
  std::string note;
  bool holds() const { return verdict == Verdict::True; }
  std::string to_text(const std::string& title) const;
};

using Battery = std::vector<std::pair<std::string, SheafModule>>;

ClassReport is_fr_space(const FinSpace& x);
ClassReport is_schematic(const FinSpace& x);

struct AffineOptions {
  std::optional<Window> window;
  Battery battery;                               // tried before the default battery
  std::optional<SectionPresentation> sections;   // presentation of O(X)
  bool use_cohomology = true;
  bool generated_ideals = true;
};
ClassReport is_affine(const SpacePtr& x, const AffineOptions& opts = {});

ClassReport is_semiseparated(const SpacePtr& x, const std::optional<Window>& window = std::nullopt);

// Structure sheaf followed by the quasi-coherent ideal sheaves generated by
// the squares of the non-unit variables at each point.
Battery default_battery(const SpacePtr& x);

// O_x -> prod_{x' > x} O_x' faithfully flat. Throws NotLocalizationPresented.
bool is_removable(const FinSpace& x, int p);
PointSet removable_points(const FinSpace& x);

struct MinimalModel {
  SpacePtr space;
  Quotiented quotient;
  PointSet removed;                 // points of the quotient
  SpaceMap inclusion;               // X_M -> quotient
  std::vector<int> representative;  // point of X_M -> point of the input space
};
MinimalModel minimal_model(const SpacePtr& x);

struct MapReport {
  ClassReport schematic, affine, flat, faithfully_flat, quasi_iso, quasi_open, quasi_closed;
  std::string to_text() const;
};
ClassReport map_is_schematic(const SpaceMap& f);
ClassReport map_is_affine(const SpaceMap& f, const std::optional<Window>& window = std::nullopt);
ClassReport map_is_flat(const SpaceMap& f);
ClassReport map_is_faithfully_flat(const SpaceMap& f);
ClassReport map_is_quasi_iso(const SpaceMap& f, const std::optional<Window>& window = std::nullopt);
ClassReport map_is_quasi_open(const SpaceMap& f);
ClassReport map_is_quasi_closed(const SpaceMap& f, const std::optional<Window>& window = std::nullopt);
MapReport classify_map(const SpaceMap& f, const std::optional<Window>& window = std::nullopt);

}  // namespace finsch
