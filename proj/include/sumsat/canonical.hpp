#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sumsat/group.hpp"
#include "sumsat/rng.hpp"

namespace sumsat {

enum class SymmetryAction { Linear, Affine, None };

const char* to_string(SymmetryAction a);
SymmetryAction parse_action(const std::string& s);

// Largest rank the minimal-image search accepts.
inline constexpr int kCanonicalMaxRank = 10;

struct CanonicalForm {
  ElementSet set;
  SymmetryAction action;
};

// Result of the minimal-image search. preimage[y] is the point the
// canonicalizing map sends to y, so set = {y : A contains preimage[y]}.
// Each automorphism is a point permutation of G fixing A setwise.
struct CanonicalLabeling {
  ElementSet set;
  std::vector<Element> preimage;
  std::vector<std::vector<Element>> automorphisms;
  std::size_t nodes = 0;
};

// Lexicographically smallest image of A under the action (bitset order, so
// sets holding small elements come first). Linear throws PreconditionError
// when 0 is in A unless allow_zero is set.
CanonicalLabeling canonical_labeling(const ElementSet& a, SymmetryAction action, bool allow_zero = false);
CanonicalForm canonical_form(const ElementSet& a, SymmetryAction action, bool allow_zero = false);

// x -> M x + shift with M given by the images of the unit vectors.
struct AffineMap {
  GroupRank rank;
  std::vector<Element> columns;
  Element shift = 0;

  Element operator()(Element x) const;
  ElementSet operator()(const ElementSet& a) const;
};

// Uniform over GL(r, 2), composed with a uniform translation when affine.
AffineMap random_map(GroupRank r, Rng& rng, bool affine);

}  // namespace sumsat
