#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsch/module.hpp"
#include "finsch/space.hpp"

namespace finsch {

// Restriction data M_x -> M_y: images of the generators of M_x in M_y.
struct ModEdge {
  int from;
  int to;
  std::vector<Vec> images;
};

// O-module on a finite space: a finitely presented module at each point and
// semilinear restrictions, composed along paths for non-adjacent pairs.
class SheafModule {
 public:
  SheafModule() = default;
  SheafModule(SpacePtr space, std::vector<FpModule> stalks, std::vector<ModEdge> edges);
  static SheafModule structure_sheaf(const SpacePtr& x);
  static SheafModule free(const SpacePtr& x, int rank);
  static SheafModule zero(const SpacePtr& x);

  const SpacePtr& space() const { return space_; }
  const FpModule& stalk(int x) const { return stalks_[x]; }
  const std::vector<FpModule>& stalks() const { return stalks_; }
  const std::vector<ModEdge>& edges() const { return edges_; }
  // Images of the generators of M_x in M_y (generators themselves when x = y).
  const std::vector<Vec>& images(int x, int y) const;
  Vec restrict(int x, int y, const Vec& v) const;
  // The induced O_y-linear map M_x (x) O_y -> M_y.
  ModHom base_changed_restriction(int x, int y) const;

  bool graded() const;
  std::vector<std::string> validate() const;

 private:
  SpacePtr space_;
  std::vector<FpModule> stalks_;
  std::vector<ModEdge> edges_;
  std::map<std::pair<int, int>, std::vector<Vec>> images_;
  std::vector<std::vector<Vec>> identity_images_;
};

// The module on another space whose point i is point pts[i] of M's space; the
// order of that space must be the induced one.
SheafModule transport(const SheafModule& m, const SpacePtr& target, const std::vector<int>& pts);
SheafModule restrict_to(const SheafModule& m, const Embedded& e);

class SheafModHom {
 public:
  SheafModHom(SheafModule source, SheafModule target, std::vector<ModHom> maps);
  const SheafModule& source() const { return source_; }
  const SheafModule& target() const { return target_; }
  const ModHom& at(int x) const { return maps_[x]; }
  std::vector<std::string> validate() const;

 private:
  SheafModule source_, target_;
  std::vector<ModHom> maps_;
};

struct QcReport {
  bool quasi_coherent = true;
  std::vector<std::pair<int, int>> failing;
};
QcReport is_quasi_coherent(const SheafModule& m);

struct SheafKernel {
  SheafModule module;
  SheafModHom inclusion;
};
SheafKernel kernel(const SheafModHom& h);
struct SheafCokernel {
  SheafModule module;
  SheafModHom projection;
};
SheafCokernel cokernel(const SheafModHom& h);

SheafModule pullback(const SpaceMap& f, const SheafModule& n);

// Stalk of f_* M at y, M(f^{-1}(U_y)). Presented as an FpModule over O_m with
// its structure map O_y -> O_m when the preimage reduces to a minimum m.
struct PushforwardStalk {
  int point;
  PointSet preimage;
  std::optional<int> minimum;
  std::optional<AlgHom> structure;
  std::optional<FpModule> module;
};
struct Pushforward {
  SpaceMap map;
  SheafModule source;
  std::vector<PushforwardStalk> stalks;
};
Pushforward pushforward(const SpaceMap& f, const SheafModule& m);
// Quasi-coherence of the pushforward; throws SectionsNotPresented when a
// stalk has no presentation.
QcReport pushforward_is_quasi_coherent(const Pushforward& p);

// M (x)_A O_x with A -> O_x given for every point.
SheafModule tilde(const FpModule& m, const SpacePtr& x, const std::vector<AlgHom>& structure);
SheafModule tilde(const FpModule& m, const SpacePtr& x, const SectionPresentation& p);

// Ideal of O given by generators at each point.
struct IdealSheaf {
  SpacePtr space;
  std::vector<std::vector<Poly>> generators;
};
SheafModule ideal_module(const IdealSheaf& i);
// Pointwise radical; throws DegreeBoundExceeded when it cannot be certified.
IdealSheaf radical_ideal_sheaf(const IdealSheaf& i, int degree_bound = 12);
std::vector<Poly> radical_ideal(const LocAlgebra& ring, const std::vector<Poly>& gens, int degree_bound = 12);

}  // namespace finsch
