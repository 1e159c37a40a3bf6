#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsch/linalg.hpp"
#include "finsch/qcoh.hpp"

namespace finsch {

// Sheaf of finite-dimensional vector spaces on a finite poset: a space per
// point and a matrix F_x -> F_y for every x < y.
struct VecSheaf {
  Field field;
  std::vector<std::vector<bool>> leq;
  std::vector<int> dims;
  std::map<std::pair<int, int>, Matrix> maps;

  int size() const { return static_cast<int>(dims.size()); }
  bool lt(int x, int y) const { return x != y && leq[x][y]; }
  Matrix map(int x, int y) const;
  // Functoriality violations; empty when valid.
  std::vector<std::string> validate() const;
};

// Graded piece of a module on a T0 space, or the whole module when every
// stalk is finite dimensional (degree = nullopt).
VecSheaf vec_slice(const SheafModule& m, const std::optional<Degree>& degree);

struct GodementComplex {
  std::vector<std::vector<std::vector<int>>> chains;  // chains[n] within U
  std::vector<int> dims;                              // dim C^n(U)
  std::vector<Matrix> d;                              // d[n]: C^n -> C^{n+1}
};
GodementComplex godement(const VecSheaf& f, const std::vector<int>& u);
// Map F_p -> C^0(U_p).
Matrix augmentation(const VecSheaf& f, int p, const GodementComplex& c);
std::vector<int> cohomology_dims(const GodementComplex& c);

enum class Backend { VectorSpace, Graded };

// Box of degrees, one [lo, hi] range per grading component.
struct Window {
  std::vector<std::pair<int, int>> ranges;
  static Window uniform(int rank, int lo, int hi);
  std::vector<Degree> degrees() const;
  std::string to_string() const;
};

struct CohomologyTable {
  Backend backend = Backend::Graded;
  std::optional<Window> window;
  std::vector<Degree> degrees;         // empty for the vector-space backend
  std::vector<std::vector<int>> dims;  // dims[i][k] for degree k (single column when ungraded)
  int max_index() const { return static_cast<int>(dims.size()) - 1; }
  int total(int i) const;
  int at(int i, const Degree& d) const;
  std::string to_text() const;
};

// H^i(U, M) for an open U of M's space (all of it when u is empty and
// whole = true). Preorders are handled through their Kolmogorov quotient.
CohomologyTable cohomology(const SheafModule& m, Backend backend, const std::optional<Window>& window,
                           const std::optional<PointSet>& u = std::nullopt);

// y -> H^i(f^{-1}(U_y), M).
std::vector<CohomologyTable> higher_direct_images(const SpaceMap& f, const SheafModule& m, Backend backend,
                                                  const std::optional<Window>& window);

struct SerreEntry {
  std::string module;
  CohomologyTable table;
  bool higher_vanishing;
};
struct SerreReport {
  std::vector<SerreEntry> entries;
  std::optional<bool> affine_verdict;  // nullopt when undecided
  bool all_vanish = true;
  bool contradiction = false;
  std::string conclusion;
};
// H^{>0} over a battery of modules, cross-checked with the affineness verdict.
SerreReport serre_harness(const SpacePtr& x, const std::vector<std::pair<std::string, SheafModule>>& battery,
                          const std::optional<Window>& window);

}  // namespace finsch
