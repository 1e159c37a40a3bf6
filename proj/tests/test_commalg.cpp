#include <doctest.h>

#include <random>

#include "finsch/algebra.hpp"
#include "finsch/errors.hpp"
#include "generators.hpp"

using namespace finsch;


TEST_CASE("multiplication B (x)_A B -> B of a localization is an isomorphism") {
  std::mt19937 rng(5);
  for (int k = 0; k < 30; ++k) {
    auto inst = gen::random_localization(rng, 1 + k % 2);
    const auto& b = inst.f.target();
    auto t = tensor_algebras(inst.f, inst.f);
    std::vector<Poly> imgs;
    for (int i = 0; i < t.algebra->nvars(); ++i) imgs.push_back(b->var(i % b->nvars()));
    AlgHom mult(t.algebra, b, imgs);
    CHECK(mult.is_isomorphism());
    CHECK(inst.f.is_localization());
  }
}

TEST_CASE("extension of the contraction recovers an ideal of a localization") {
  std::mt19937 rng(9);
  for (int k = 0; k < 30; ++k) {
    auto inst = gen::random_localization(rng, 1 + k % 2);
    const auto& b = *inst.f.target();
    auto c = gen::contraction(b, inst.ideal);
    auto ext = b.ideal_gb(c);
    auto orig = b.ideal_gb(inst.ideal);
    for (const auto& g : c) CHECK(orig.contains(b.reduce(g)));
    for (const auto& g : inst.ideal) CHECK(ext.contains(g));
  }
}

TEST_CASE("faithful flatness of covers matches rational points over F_101") {
  const long p = 101;
  Field f = Field::prime(p);
  std::mt19937 rng(17);
  int yes = 0, no = 0;
  for (int k = 0; k < 20; ++k) {
    int n = 1 + k % 2;
    auto inst = gen::random_cover(rng, n);
    std::vector<std::string> vars = n == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    std::vector<std::string> inv;
    if (!inst.h.empty()) inv.push_back(gen::to_text(inst.h, n));
    auto base = LocAlgebra::from_strings(f, vars, {}, inv);
    std::vector<AlgHom> covers;
    for (const auto& s : inst.s) covers.push_back(AlgHom::localize(base, {base->parse(gen::to_text(s, n))}));
    bool expected = gen::cover_oracle(inst, p);
    CHECK(cover_is_faithfully_flat(base, covers) == expected);
    (expected ? yes : no)++;
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}
