#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "finsch/algebra.hpp"

namespace finsch {

class FinSpace;
using SpacePtr = std::shared_ptr<const FinSpace>;
using PointSet = std::vector<int>;

struct Edge {
  int from;
  int to;
  AlgHom hom;
};

// Finite preordered set with a stalk algebra at every point and restriction
// homomorphisms O_x -> O_y for x <= y.
class FinSpace {
 public:
  // The order is the reflexive-transitive closure of the edges; restrictions
  // between arbitrary comparable points are composed along paths.
  FinSpace(Field f, std::vector<std::string> names, std::vector<AlgebraPtr> stalks, std::vector<Edge> edges);
  static SpacePtr make(Field f, std::vector<std::string> names, std::vector<AlgebraPtr> stalks,
                       std::vector<Edge> edges);
  // Every restriction for x < y (as a preorder) supplied explicitly.
  static SpacePtr with_all_restrictions(Field f, std::vector<std::string> names, std::vector<AlgebraPtr> stalks,
                                        std::vector<std::vector<bool>> leq, std::map<std::pair<int, int>, AlgHom> res);

  const Field& field() const { return field_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;  // -1 when absent
  const AlgebraPtr& stalk(int x) const { return stalks_[x]; }
  bool leq(int x, int y) const { return leq_[x][y]; }
  bool lt(int x, int y) const { return leq_[x][y] && !leq_[y][x]; }
  bool equivalent(int x, int y) const { return leq_[x][y] && leq_[y][x]; }
  const std::vector<std::vector<bool>>& order() const { return leq_; }
  const AlgHom& restriction(int x, int y) const;
  // Covering pairs of the order (x < y with nothing strictly between).
  std::vector<std::pair<int, int>> covering_pairs() const;
  const std::vector<Edge>& edges() const { return edges_; }

  bool is_t0() const;
  bool graded() const;
  int grading_rank() const;

  PointSet all_points() const;
  PointSet up(int x) const;
  PointSet up2(int x, int y) const;
  bool is_open(const PointSet& u) const;
  PointSet minimal_points(const PointSet& u) const;
  // A point below every point of u that lies in u, if any.
  std::optional<int> minimum(const PointSet& u) const;

  // Strict chains x0 < ... < xn, grouped by n.
  const std::vector<std::vector<std::vector<int>>>& chains() const;

  // Violations of the sheaf axioms; empty when valid.
  std::vector<std::string> validate() const;

 private:
  FinSpace() = default;
  void compute_order();
  void compute_restrictions();

  Field field_;
  std::vector<std::string> names_;
  std::vector<AlgebraPtr> stalks_;
  std::vector<Edge> edges_;
  std::vector<std::vector<bool>> leq_;
  std::map<std::pair<int, int>, AlgHom> res_;
  std::vector<AlgHom> identities_;

  mutable std::once_flag chains_once_;
  mutable std::vector<std::vector<std::vector<int>>> chains_;
};

// Morphism of ringed spaces: point map plus comorphisms O'_{f(x)} -> O_x.
class SpaceMap {
 public:
  SpaceMap() = default;
  SpaceMap(SpacePtr source, SpacePtr target, std::vector<int> points, std::vector<AlgHom> comorphisms);
  static SpaceMap identity(const SpacePtr& x);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  int operator()(int x) const { return points_[x]; }
  const std::vector<int>& points() const { return points_; }
  const AlgHom& comorphism(int x) const { return comorphisms_[x]; }
  const std::vector<AlgHom>& comorphisms() const { return comorphisms_; }

  std::vector<std::string> validate() const;
  // this followed by g.
  SpaceMap then(const SpaceMap& g) const;
  // Literal equality: same point map and comorphisms agreeing on generators.
  bool same_as(const SpaceMap& o) const;
  PointSet preimage(const PointSet& v) const;

 private:
  SpacePtr source_, target_;
  std::vector<int> points_;
  std::vector<AlgHom> comorphisms_;
};

// Subspace on an arbitrary point set with the induced data.
struct Embedded {
  SpacePtr space;
  SpaceMap inclusion;
  std::vector<int> points;  // point of the subspace -> point of the ambient space
};
Embedded subspace(const SpacePtr& x, const PointSet& u);
// Throws NotOpen unless u is upward closed.
Embedded open_subspace(const SpacePtr& x, const PointSet& u);

struct Quotiented {
  SpacePtr space;
  SpaceMap map;
  std::vector<int> representative;  // quotient point -> chosen point
};
Quotiented kolmogorov_quotient(const SpacePtr& x);

// Product over R given structure maps R -> O_x and R -> O_y.
SpacePtr product_over_ring(const SpacePtr& x, const SpacePtr& y, const AlgebraPtr& r, const std::vector<AlgHom>& sx,
                           const std::vector<AlgHom>& sy);
SpacePtr product_over_field(const SpacePtr& x, const SpacePtr& y);
// (f, g): Z -> X x Y for p = product_over_field(X, Y).
SpaceMap pair_map(const SpaceMap& f, const SpaceMap& g, const SpacePtr& p);
// X -> X x X over the field.
SpaceMap diagonal(const SpacePtr& x);

struct FiberProduct {
  SpacePtr space;
  SpaceMap first;
  SpaceMap second;
  std::vector<std::pair<int, int>> pairs;
};
FiberProduct fiber_product(const SpaceMap& f, const SpaceMap& g);

struct Cylinder {
  SpacePtr space;
  SpaceMap inclusion;   // X -> C(f), open
  SpaceMap retraction;  // C(f) -> Y
  SpaceMap target_inclusion;  // Y -> C(f)
};
Cylinder cylinder(const SpaceMap& f);

// Presentation of O(U) by an algebra with maps to the stalks of U and from
// the stalks of the points lying below all of U.
struct SectionPresentation {
  AlgebraPtr algebra;
  std::map<int, AlgHom> to_points;
  std::map<int, AlgHom> from_points;
};
// A -> prod O_z faithfully flat and the pairwise tensor condition over U.
bool certify_sections(const FinSpace& x, const PointSet& u, const SectionPresentation& p);

struct Adjoined {
  SpacePtr space;
  int point;
};
// X with a new point u whose stalk is O(U). Throws SectionsNotPresented when
// U has no minimum up to equivalence and no presentation is given.
Adjoined adjoin_point(const SpacePtr& x, const PointSet& u, const std::optional<SectionPresentation>& p = std::nullopt,
                      const std::string& name = "u");

// An isomorphism X -> Y whose comorphisms send each variable to the variable
// of the same name, if one exists.
std::optional<SpaceMap> find_isomorphism(const SpacePtr& x, const SpacePtr& y);

// Dimension of the degree-d part of O(U), computed as an equalizer.
int sections_dimension(const FinSpace& x, const PointSet& u, const std::optional<Degree>& d);
// Membership of a family (one element per point of U) in O(U).
bool is_section(const FinSpace& x, const PointSet& u, const std::vector<Poly>& family);

std::string point_set_string(const FinSpace& x, const PointSet& u);

}  // namespace finsch
