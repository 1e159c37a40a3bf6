#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "finsch/algebra.hpp"
#include "finsch/linalg.hpp"

namespace finsch {

// Finitely presented module R^g / (rows of relations) over a localized algebra.
class FpModule {
 public:
  FpModule() = default;
  FpModule(AlgebraPtr ring, int ngens, std::vector<Vec> relations,
           std::optional<std::vector<Degree>> shifts = std::nullopt);
  static FpModule free(AlgebraPtr ring, int rank, std::optional<std::vector<Degree>> shifts = std::nullopt);
  static FpModule zero(AlgebraPtr ring) { return free(std::move(ring), 0); }

  const AlgebraPtr& ring() const { return ring_; }
  int ngens() const { return ngens_; }
  const std::vector<Vec>& relations() const { return relations_; }
  // Graded ring and relations homogeneous for the generator shifts.
  bool graded() const { return graded_; }
  // Generator degrees; zero when not given explicitly.
  std::vector<Degree> shifts() const;
  bool has_explicit_shifts() const { return shifts_.has_value(); }

  Vec zero_vec() const { return Vec(ngens_, ring_->zero()); }
  Vec generator(int j) const;
  Vec reduce(const Vec& v) const;
  bool is_zero(const Vec& v) const;
  bool equal(const Vec& a, const Vec& b) const;
  bool is_zero() const;
  // Relations together with J * e_c, J the ideal of the ring.
  std::vector<Vec> submodule_rows() const;

  FpModule base_change(const AlgHom& f) const;
  FpModule with_relations(const std::vector<Vec>& more) const;
  std::string describe() const;

 private:
  AlgebraPtr ring_;
  int ngens_ = 0;
  std::vector<Vec> relations_;
  std::optional<std::vector<Degree>> shifts_;
  bool graded_ = false;
  std::shared_ptr<GroebnerBasis> gb_;
};

Vec vec_apply(const AlgHom& f, const Vec& v);
Vec vec_scale(const LocAlgebra& ring, const Poly& c, const Vec& v);
Vec vec_add(const LocAlgebra& ring, const Vec& a, const Vec& b);
Vec vec_combine(const LocAlgebra& ring, const Vec& coeffs, const std::vector<Vec>& vectors, int length);

// R-linear map between modules over the same ring; images[j] is the image of
// the j-th source generator.
class ModHom {
 public:
  ModHom() = default;
  ModHom(FpModule source, FpModule target, std::vector<Vec> images);
  static ModHom identity(const FpModule& m);
  static ModHom zero(const FpModule& s, const FpModule& t);

  const FpModule& source() const { return source_; }
  const FpModule& target() const { return target_; }
  const std::vector<Vec>& images() const { return images_; }

  Vec apply(const Vec& v) const;
  ModHom then(const ModHom& g) const;
  bool is_zero() const;
  bool same_as(const ModHom& o) const;

  bool is_surjective() const;
  bool is_injective() const;
  bool is_isomorphism() const { return is_surjective() && is_injective(); }

 private:
  FpModule source_, target_;
  std::vector<Vec> images_;
};

struct KernelResult {
  FpModule module;
  ModHom inclusion;
};
KernelResult kernel(const ModHom& h);

struct CokernelResult {
  FpModule module;
  ModHom projection;
};
CokernelResult cokernel(const ModHom& h);

// The canonical map M (x)_A B -> N induced by an A-semilinear map M -> N along
// f: A -> B; images are given as elements of N.
ModHom semilinear_extension(const FpModule& m, const AlgHom& f, const FpModule& n, const std::vector<Vec>& images);

// Cofactors of an element with respect to a fixed generating list inside a module.
class ModuleLifter {
 public:
  ModuleLifter(const FpModule& m, const std::vector<Vec>& gens);
  std::optional<Vec> lift(const Vec& v) const;

 private:
  AlgebraPtr ring_;
  std::shared_ptr<Lifter> lifter_;
};

// Finite-dimensional slice of a module: a graded piece, or the whole module
// when the ring is finite dimensional (degree = nullopt).
class GradedPiece {
 public:
  GradedPiece(const FpModule& m, std::optional<Degree> degree);
  int dim() const { return quotient_.dim(); }
  // Coordinates of a homogeneous element.
  Vector coords(const Vec& v) const;
  // The element with the given coordinates.
  Vec element(const Vector& c) const;
  const std::optional<Degree>& degree() const { return degree_; }
  // Generator index and monomial of the i-th basis vector.
  const std::pair<int, Exp>& basis(int i) const { return ambient_[quotient_.free_positions()[i]]; }

 private:
  Vector ambient_coords(const Vec& v) const;

  FpModule module_;
  std::optional<Degree> degree_;
  std::vector<std::pair<int, Exp>> ambient_;
  std::map<std::pair<int, Exp>, int> index_;
  Quotient quotient_;
};

// Matrix of the map M_d -> N_d induced by an f-semilinear map with the given
// generator images (elements of N).
Matrix piece_matrix(const GradedPiece& src, const FpModule& m, const GradedPiece& tgt, const AlgHom& f,
                    const std::vector<Vec>& images);

}  // namespace finsch
