#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "finsch/groebner.hpp"

namespace finsch {

using Degree = std::vector<int>;

class LocAlgebra;
using AlgebraPtr = std::shared_ptr<const LocAlgebra>;

// k[x_1..x_n]/I localized at finitely many elements s_1..s_m. Internally the
// ring k[x, t_1..t_m]/(I, t_j s_j - 1); elements are polynomials in these
// "extended" variables, kept in normal form.
class LocAlgebra {
 public:
  LocAlgebra(Field f, std::vector<std::string> vars, std::vector<Poly> relations, std::vector<Poly> inverted,
             std::optional<std::vector<Degree>> weights = std::nullopt);

  static AlgebraPtr make(Field f, std::vector<std::string> vars, std::vector<Poly> relations,
                         std::vector<Poly> inverted, std::optional<std::vector<Degree>> weights = std::nullopt);
  // Convenience: relations and inverted elements written as expressions.
  static AlgebraPtr from_strings(Field f, const std::vector<std::string>& vars, const std::vector<std::string>& relations,
                                 const std::vector<std::string>& inverted,
                                 std::optional<std::vector<Degree>> weights = std::nullopt);
  static AlgebraPtr ground(Field f, int grading_rank = 0);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Poly>& relations() const { return relations_; }
  const std::vector<Poly>& inverted() const { return inverted_; }
  const std::optional<std::vector<Degree>>& weights() const { return weights_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int ninverted() const { return static_cast<int>(inverted_.size()); }
  int n_ext() const { return nvars() + ninverted(); }

  bool graded() const { return weights_.has_value(); }
  int grading_rank() const { return rank_; }
  const std::vector<Degree>& ext_weights() const { return ext_weights_; }

  const GroebnerBasis& ideal() const { return *gb_; }
  bool is_zero_ring() const { return gb_->is_unit_ideal(); }

  Poly zero() const { return Poly(field_, n_ext()); }
  Poly one() const { return Poly::constant(field_, n_ext(), 1); }
  Poly constant(const Scalar& c) const { return Poly::constant(field_, n_ext(), c); }
  Poly var(int i) const { return Poly::variable(field_, n_ext(), i); }
  // The element 1/s_j.
  Poly inverse_var(int j) const { return var(nvars() + j); }
  // A polynomial in the original variables as an element.
  Poly lift_original(const Poly& p) const;

  Poly reduce(const Poly& p) const { return gb_->reduce(p); }
  bool is_zero(const Poly& p) const { return gb_->contains(p); }
  bool equal(const Poly& a, const Poly& b) const { return is_zero(a - b); }
  std::optional<Poly> inverse(const Poly& u) const;
  bool is_unit(const Poly& u) const { return contains_one({u}); }

  // 1 lies in the ideal generated by gens.
  bool contains_one(const std::vector<Poly>& gens) const;
  // f lies in the radical of the ideal generated by gens.
  bool radical_member(const Poly& f, const std::vector<Poly>& gens) const;
  GroebnerBasis ideal_gb(const std::vector<Poly>& gens) const { return gb_->extended(gens); }

  // x = num / prod s_j^{e_j} with num in the original variables.
  std::pair<Poly, std::vector<int>> as_fraction(const Poly& x) const;
  // Numerator of as_fraction, as an element.
  Poly numerator(const Poly& x) const;

  // This algebra with further elements (given as elements) inverted.
  AlgebraPtr localized_at(const std::vector<Poly>& elements) const;

  Poly parse(const std::string& text) const;
  std::string print(const Poly& x) const;
  std::string print_original(const Poly& p) const;
  std::string describe() const;

  std::optional<Degree> degree_of(const Poly& x) const;
  Degree zero_degree() const { return Degree(rank_, 0); }

  // Basis of the graded piece of degree d (standard monomials in the extended
  // variables); throws InfiniteGradedPiece if it is not finite.
  std::vector<Exp> standard_monomials(const Degree& d) const;
  // All standard monomials; throws InfiniteGradedPiece unless finite dimensional.
  std::vector<Exp> all_standard_monomials() const;
  bool finite_dimensional() const;

  bool same_presentation(const LocAlgebra& o) const;

 private:
  struct Cone {
    Exp base;
    std::vector<int> free;
  };
  const std::vector<Cone>& cones() const;

  Field field_;
  std::vector<std::string> vars_;
  std::vector<Poly> relations_;
  std::vector<Poly> inverted_;
  std::optional<std::vector<Degree>> weights_;
  int rank_ = 0;
  std::vector<Degree> ext_weights_;
  std::shared_ptr<GroebnerBasis> gb_;

  mutable std::once_flag cones_once_;
  mutable std::vector<Cone> cones_;
  mutable std::mutex cache_mutex_;
  mutable std::map<Degree, std::vector<Exp>> piece_cache_;
};

// Ring homomorphism between localized algebras, given by the images of the
// source's original variables. Kind Localization certifies
// target = source[1/extra] over the source.
class AlgHom {
 public:
  enum class Kind { Localization, General };

  AlgHom() = default;
  AlgHom(AlgebraPtr source, AlgebraPtr target, std::vector<Poly> images);
  static AlgHom localization(AlgebraPtr source, AlgebraPtr target, std::vector<Poly> images,
                             std::vector<Poly> extra);
  static AlgHom identity(AlgebraPtr a);
  // Target built as source[1/extra], with the canonical map.
  static AlgHom localize(AlgebraPtr source, const std::vector<Poly>& extra);
  // General if possible, upgraded to Localization with no extra elements when
  // the map is an isomorphism.
  static AlgHom detect(AlgebraPtr source, AlgebraPtr target, std::vector<Poly> images);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const std::vector<Poly>& images() const { return images_; }
  const std::vector<Poly>& ext_images() const { return ext_images_; }
  Kind kind() const { return kind_; }
  bool is_localization() const { return kind_ == Kind::Localization; }
  const std::vector<Poly>& extra() const { return extra_; }
  bool flat_certified() const { return flat_certified_ || is_localization(); }
  AlgHom with_flat_certificate() const;

  Poly apply(const Poly& x) const;
  // this followed by g.
  AlgHom then(const AlgHom& g) const;
  bool same_as(const AlgHom& o) const;

  // Product of the extra elements (an element of the source).
  Poly sigma() const;
  // For a Localization hom: an element of the source whose inversion is
  // equivalent to inverting the given target element.
  Poly numerator_pullback(const Poly& y) const;

  std::optional<AlgHom> inverse() const;
  bool is_isomorphism() const { return inverse().has_value(); }
  bool is_surjective() const;

 private:
  void compute_ext_images();
  void check_relations() const;
  void certify_localization();

  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<Poly> images_;
  std::vector<Poly> ext_images_;
  Kind kind_ = Kind::General;
  std::vector<Poly> extra_;
  bool flat_certified_ = false;
  AlgebraPtr loc_;
  std::vector<Poly> back_;
};

// Decides bijectivity of the map A -> B sending the extended variables of A to
// phi_ext; on success returns images of B's extended variables in A.
struct GraphTest {
  bool surjective = false;
  bool injective = false;
  std::vector<Poly> inverse_images;
};
GraphTest graph_test(const LocAlgebra& a, const LocAlgebra& b, const std::vector<Poly>& phi_ext,
                     bool check_injective = true);

struct Tensor {
  AlgebraPtr algebra;
  AlgHom left;   // A -> A (x)_C B
  AlgHom right;  // B -> A (x)_C B
};
// A (x)_C B for fa: C -> A and fb: C -> B.
Tensor tensor_algebras(const AlgHom& fa, const AlgHom& fb);
// Variant over the ground field.
Tensor tensor_over_field(AlgebraPtr a, AlgebraPtr b);


bool radical_contains_one(const std::vector<Poly>& generators, const LocAlgebra& ring);

// True iff base -> prod of the cover targets is faithfully flat; every cover
// must be a Localization hom out of base.
bool cover_is_faithfully_flat(const AlgebraPtr& base, const std::vector<AlgHom>& covers);
// base[1/prod denominators] -> prod base[1/sigma_i] faithfully flat, where each
// sigma_i is a multiple (in the radical sense) of the denominators.
bool localized_cover(const LocAlgebra& base, const std::vector<Poly>& denominators, const std::vector<Poly>& sigmas);

}  // namespace finsch
