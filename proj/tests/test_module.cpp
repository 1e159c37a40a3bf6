#include "doctest.h"

#include "finsch/errors.hpp"
#include "finsch/module.hpp"

using namespace finsch;

namespace {
Field Q = Field::rationals();
}

TEST_CASE("linear algebra") {
  Matrix m(Q, 2, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  m.at(1, 2) = 1;
  CHECK(m.rank() == 2);
  auto k = m.kernel();
  REQUIRE(k.size() == 1);
  CHECK(m.apply(k[0]) == Vector{0, 0});
  Quotient q(Q, 3, {{1, 1, 0}});
  CHECK(q.dim() == 2);
  CHECK(q.coords({1, 1, 0}) == Vector{0, 0});
}

TEST_CASE("base change kills torsion") {
  auto kx = LocAlgebra::from_strings(Q, {"x"}, {}, {});
  auto f = AlgHom::localize(kx, {kx->var(0)});
  FpModule m(kx, 1, {{kx->var(0)}});
  CHECK_FALSE(m.is_zero());
  CHECK(m.base_change(f).is_zero());
  CHECK(FpModule::free(kx, 2).base_change(f).ngens() == 2);
  CHECK_FALSE(FpModule::free(kx, 2).base_change(f).is_zero());
}

TEST_CASE("kernels") {
  auto kx = LocAlgebra::from_strings(Q, {"x"}, {}, {});
  auto r = FpModule::free(kx, 1);
  ModHom mx(r, r, {{kx->var(0)}});
  CHECK(kernel(mx).module.ngens() == 0);
  CHECK_FALSE(mx.is_surjective());
  CHECK(ModHom::identity(r).is_isomorphism());

  FpModule m(kx, 1, {{kx->parse("x^2")}});
  ModHom mx2(m, m, {{kx->var(0)}});
  auto k = kernel(mx2);
  REQUIRE(k.module.ngens() == 1);
  // the kernel is generated by x and killed by x
  CHECK(m.equal(k.inclusion.images()[0], {kx->var(0)}) );
  CHECK(k.module.is_zero({kx->var(0)}));
  CHECK_FALSE(k.module.is_zero({kx->one()}));
  CHECK(k.inclusion.then(mx2).is_zero());

  auto z = ModHom::zero(m, r);
  CHECK(kernel(z).module.ngens() == 1);
  auto c = cokernel(ModHom::zero(r, m));
  CHECK(c.module.ngens() == 1);
  CHECK(c.projection.then(ModHom::identity(c.module)).is_surjective());
  CHECK_THROWS_AS(ModHom(m, r, {{kx->one()}}), InvalidHom);
}

TEST_CASE("multiplication map of a localization is an isomorphism") {
  auto kx = LocAlgebra::from_strings(Q, {"x"}, {}, {});
  auto f = AlgHom::localize(kx, {kx->var(0)});
  auto t = tensor_algebras(f, f);
  auto b = f.target();
  AlgHom mult(t.algebra, b, {b->var(0), b->var(0)});
  CHECK(mult.is_isomorphism());
  // as modules: B (x)_A B -> B over B via the left leg
  FpModule bb = FpModule::free(b, 1).base_change(t.left);
  ModHom mm = semilinear_extension(FpModule::free(b, 1), t.left, FpModule::free(t.algebra, 1), {{t.algebra->one()}});
  CHECK(mm.is_isomorphism());
  CHECK(bb.ngens() == 1);
}

TEST_CASE("graded pieces of modules") {
  auto kxy = LocAlgebra::from_strings(Q, {"x", "y"}, {}, {}, std::vector<Degree>{{1}, {1}});
  FpModule m(kxy, 1, {{kxy->var(0)}});
  CHECK(GradedPiece(m, Degree{3}).dim() == 1);
  CHECK(GradedPiece(FpModule::free(kxy, 1), Degree{2}).dim() == 3);
  FpModule twisted = FpModule::free(kxy, 1, std::vector<Degree>{{2}});
  CHECK(GradedPiece(twisted, Degree{2}).dim() == 1);
  CHECK(GradedPiece(twisted, Degree{1}).dim() == 0);
  auto kx = LocAlgebra::from_strings(Q, {"x"}, {}, {});
  CHECK_THROWS_AS(GradedPiece(FpModule::free(kx, 1), Degree{0}), UngradedModule);
  auto fin = LocAlgebra::from_strings(Q, {"x"}, {"x^3"}, {});
  CHECK(GradedPiece(FpModule::free(fin, 2), std::nullopt).dim() == 6);
}
