#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "finsch/poly.hpp"

namespace finsch {

struct MonomialOrder {
  enum class Type { Grevlex, Lex, Block };
  Type type = Type::Grevlex;
  // Block: the first `block` variables are compared first (grevlex), then
  // the rest (grevlex). Used to eliminate those variables.
  int block = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Type::Lex, 0}; }
  static MonomialOrder eliminate(int k) { return {Type::Block, k}; }

  int compare(const Exp& a, const Exp& b) const;
};

using Vec = std::vector<Poly>;

// Reduced Groebner basis of a submodule of R^ncomps, R = k[x_1..x_n], under
// the position-over-term extension of a monomial order (component 0 largest).
// Ideals are the case ncomps = 1.
class GroebnerBasis {
 public:
  GroebnerBasis(Field f, int nvars, int ncomps, MonomialOrder order, const std::vector<Vec>& gens);
  static GroebnerBasis of_ideal(Field f, int nvars, const std::vector<Poly>& gens,
                                MonomialOrder order = MonomialOrder::grevlex());

  // Basis of the submodule generated by this one together with `more`.
  GroebnerBasis extended(const std::vector<Vec>& more) const;
  GroebnerBasis extended(const std::vector<Poly>& more) const;

  Vec reduce(const Vec& v) const;
  Poly reduce(const Poly& p) const;
  bool contains(const Vec& v) const;
  bool contains(const Poly& p) const;
  bool is_unit_ideal() const;

  std::vector<Vec> elements() const;
  std::vector<Poly> polys() const;
  // (component, exponent) of each leading term.
  std::vector<std::pair<int, Exp>> leading_monomials() const;

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  int ncomps() const { return ncomps_; }
  const MonomialOrder& order() const { return order_; }
  size_t size() const { return basis_.size(); }

  struct Term {
    int comp;
    Exp e;
    Scalar c;
  };
  using TVec = std::vector<Term>;  // ascending; leading term at back()

 private:
  GroebnerBasis(Field f, int nvars, int ncomps, MonomialOrder order)
      : field_(f), nvars_(nvars), ncomps_(ncomps), order_(order) {}

  int cmp(int ca, const Exp& a, int cb, const Exp& b) const;
  TVec to_tvec(const Vec& v) const;
  Vec to_vec(const TVec& t) const;
  TVec sub_mul(const TVec& p, const Scalar& c, const Exp& m, const TVec& g) const;
  TVec normal_form(TVec p, bool full) const;
  void make_monic(TVec& t) const;
  void add_and_complete(const std::vector<TVec>& gens);
  void finalize();

  Field field_;
  int nvars_ = 0;
  int ncomps_ = 1;
  MonomialOrder order_;
  std::vector<TVec> basis_;
};

// Generators of { b in R^m : sum b_i v_i in span(sub) } for vectors v_i, sub
// in R^g (the module of syzygies of v modulo sub).
std::vector<Vec> syzygies(Field f, int nvars, int g, const std::vector<Vec>& v, const std::vector<Vec>& sub,
                          MonomialOrder order = MonomialOrder::grevlex());

// Cofactors b with target - sum b_i gens_i in span(sub), if they exist.
std::optional<Vec> lift(Field f, int nvars, int g, const Vec& target, const std::vector<Vec>& gens,
                        const std::vector<Vec>& sub, MonomialOrder order = MonomialOrder::grevlex());

}  // namespace finsch

namespace finsch {

// Reusable cofactor solver for a fixed generator list.
class Lifter {
 public:
  Lifter(Field f, int nvars, int g, const std::vector<Vec>& gens, const std::vector<Vec>& sub,
         MonomialOrder order = MonomialOrder::grevlex());
  std::optional<Vec> lift(const Vec& target) const;

 private:
  int g_;
  int m_;
  Field field_;
  int nvars_;
  std::shared_ptr<GroebnerBasis> gb_;
};

}  // namespace finsch
