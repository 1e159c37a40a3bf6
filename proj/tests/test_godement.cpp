#include <doctest.h>

#include <random>

#include "finsch/cohomology.hpp"
#include "generators.hpp"

using namespace finsch;

namespace {

std::vector<int> up_set(const gen::Order& o, int p) {
  std::vector<int> u;
  for (int q = 0; q < static_cast<int>(o.size()); ++q)
    if (o[p][q]) u.push_back(q);
  return u;
}

}  // namespace

TEST_CASE("random subquotient sheaves are functorial") {
  std::mt19937 rng(3);
  for (int n = 1; n <= 4; ++n)
    for (const auto& o : gen::posets(n)) {
      auto f = gen::random_subquotient_sheaf(o, rng);
      CHECK(f.validate().empty());
      for (int d : f.dims) CHECK(d <= 3);
    }
}

TEST_CASE("augmented Godement complexes are exact on minimal opens") {
  std::mt19937 rng(2024);
  std::vector<gen::Order> all;
  for (int n = 1; n <= 4; ++n)
    for (const auto& o : gen::posets(n)) all.push_back(o);
  REQUIRE(all.size() == 24);
  int sheaves = 0, nonzero_h = 0;
  for (int k = 0; k < 60; ++k) {
    const auto& o = all[k % all.size()];
    auto f = gen::random_subquotient_sheaf(o, rng);
    REQUIRE(f.validate().empty());
    ++sheaves;
    for (int p = 0; p < f.size(); ++p) {
      auto c = godement(f, up_set(o, p));
      Matrix aug = augmentation(f, p, c);
      CHECK(aug.rank() == f.dims[p]);
      if (!c.d.empty()) {
        CHECK((c.d[0] * aug).is_zero());
        CHECK(aug.rank() + c.d[0].rank() == c.dims[0]);
      } else {
        CHECK(aug.rank() == c.dims[0]);
      }
      for (size_t i = 0; i + 1 < c.d.size(); ++i) {
        CHECK((c.d[i + 1] * c.d[i]).is_zero());
        CHECK(c.d[i].rank() + c.d[i + 1].rank() == c.dims[i + 1]);
      }
      auto h = cohomology_dims(c);
      CHECK(h[0] == f.dims[p]);
      for (size_t i = 1; i < h.size(); ++i) CHECK(h[i] == 0);
    }
    std::vector<int> everything(f.size());
    for (int i = 0; i < f.size(); ++i) everything[i] = i;
    auto c = godement(f, everything);
    for (size_t i = 0; i + 1 < c.d.size(); ++i) CHECK((c.d[i + 1] * c.d[i]).is_zero());
    auto h = cohomology_dims(c);
    for (size_t i = 1; i < h.size(); ++i) nonzero_h += h[i] > 0;
  }
  CHECK(sheaves >= 50);
  CHECK(nonzero_h > 0);
}
