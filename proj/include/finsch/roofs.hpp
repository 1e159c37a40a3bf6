#pragma once

#include "finsch/classify.hpp"
#include "finsch/space.hpp"

namespace finsch {

// A pair X <- X' -> Y: a quasi-isomorphism and a schematic morphism.
struct Roof {
  SpaceMap left;
  SpaceMap right;
  ClassReport left_certificate;   // quasi-isomorphism
  ClassReport right_certificate;  // schematic
  const SpacePtr& apex() const { return left.source(); }
  const SpacePtr& source() const { return left.target(); }
  const SpacePtr& target() const { return right.target(); }
};

// Certifies both legs; throws Uncertified otherwise.
Roof make_roof(const SpaceMap& left, const SpaceMap& right);
Roof identity_roof(const SpacePtr& x);
// (Id_X, f).
Roof roof_of(const SpaceMap& f);

// f followed by g, through the fiber product of f.right and g.left.
Roof compose(const Roof& f, const Roof& g);
// Swapped legs; throws NotInvertible unless the right leg is a quasi-isomorphism.
Roof invert(const Roof& f);
// Compares the two composites on the minimal model of the fiber product of
// the left legs. Throws Uncertified when the minimal model is not computable.
bool roof_equal(const Roof& f, const Roof& g);

}  // namespace finsch
