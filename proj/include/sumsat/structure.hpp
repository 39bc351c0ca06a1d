#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sumsat/group.hpp"
#include "sumsat/report.hpp"
#include "sumsat/urgraph.hpp"

namespace sumsat {

enum class DecompositionKind { SaturatingForm, RoundForm };

// SaturatingForm: A = (shift + (base u {0})) \ {0} with base maximal sum-free.
// RoundForm:      A = shift + (base u {0}) with base sum-free.
struct Decomposition {
  Element shift;
  ElementSet base;
  DecompositionKind kind;

  ElementSet expand() const;
};

// Every s in A u {0} whose S = (s + (A u {0})) \ {0} is maximal sum-free.
// Other shifts cannot work: 0 in s + (S u {0}) forces s in A u {0}.
std::vector<Decomposition> decompose_saturating(const ElementSet& a);

// Every g in A with (g + A) \ {0} sum-free.
std::vector<Decomposition> decompose_round(const ElementSet& a);

enum class SumfreeTag { IndexTwoCoset, FivePointForm, Other };

struct SumfreeClass {
  SumfreeTag tag = SumfreeTag::Other;
  std::optional<Subgroup> coset_subgroup;   // IndexTwoCoset: s0 + S
  std::optional<Subgroup> period_subgroup;  // FivePointForm: pi(S), index 16
  std::vector<Element> quotient_points;     // FivePointForm: phi_H(S), rank-4 quotient
};

const char* to_string(SumfreeTag tag);

SumfreeClass classify_max_sumfree(const ElementSet& s);

// Large maximal sum-free sets (|S| > 9 * 2^(r-5)) never classify as Other.
PredicateReport large_sumfree_form_check(const ElementSet& s);

// Constructions. H_u below is the index-2 subgroup {x : <x, u> = 0}.
ElementSet construct_coset(GroupRank r, Element functional, Element g);
ElementSet construct_punctured_subgroup(GroupRank r, Element functional, Element g);
ElementSet construct_shifted_cap(const ElementSet& s, Element shift);
ElementSet construct_cap_replacement(const ElementSet& s, Element fixed);
ElementSet construct_product(const Subgroup& f, const Subgroup& h);
// F = <e_0 .. e_{f-1}>, H = <e_f .. e_{r-1}>.
ElementSet construct_product(GroupRank r, int f_dim);
// B + H with B = {e0, e1, e2, e3, e0+e1+e2+e3} and H = <e_4 .. e_{r-1}>.
ElementSet construct_five_point(GroupRank r);

// Projective view: points are non-zero elements, lines are {x, y, x + y}.
PredicateReport is_blocking(const ElementSet& b);
PredicateReport is_minimal_blocking(const ElementSet& b);
// {s} u {b in B : the line through s and b meets B only in b}.
ElementSet tangent_construction(const ElementSet& b, Element s);
ElementSet point_complement(const ElementSet& b);

// Blocking-set form of a minimal 1-saturating set: either A is the
// complement of a minimal blocking set, or A = tangent_construction(B, s)
// for a minimal blocking B. Found by direct search over B, independent of
// decompose_saturating.
struct BlockingForm {
  std::optional<Element> s;  // nullopt: A is the complement of B
  ElementSet b;
};
std::vector<BlockingForm> blocking_forms(const ElementSet& a);

enum class CosetType { T0, T1, T2Zero, T2Minus, T2Plus, T3Minus, T3Plus, T4Minus, T4Plus, Unclassified };

const char* to_string(CosetType t);

struct CosetRecord {
  Element representative;  // smallest element of the coset
  std::size_t a_count;     // |A_g|
  std::size_t d_count;     // |D_g|
  std::size_t km_image;    // |phi_{K-}(A_g)|
  std::size_t kp_image;    // |phi_{K+}(A_g)|
  CosetType type;
};

struct CosetCensus {
  Element a1, a2, a3;
  Subgroup l, k_minus, k_plus, h, m;
  std::vector<CosetRecord> cosets;         // cosets[0] is L itself
  std::map<std::string, std::size_t> counts;  // n0, n1, n2_0, ..., over non-zero cosets
  bool coset_sum_identity = false;         // sum n_i = 2^(r-3) - 1
  bool weighted_sum_identity = false;      // n1 + 2n2 + 3n3 + 4n4 = |A| - 4
  // 2D(A) misses a1 and a2 + a3. The |D_g| bounds on L, for types 1, 2^-,
  // 2^+ and for type 0 rest on this; it holds when |A| > 2^(r-2) + 3.
  bool sum_premise = false;
  bool size_hypothesis = false;            // |A| > 2^(r-2) + 3
  std::vector<std::string> violations;     // empty when every applicable claim holds
  std::vector<std::string> premise_failures;  // bounds that failed without the premise
};

// A must be round, contain 0, and have (0, a1) and (a2, a3) as isolated
// edges of its unique-representation graph. The edge pair defaults to the
// lexicographically smallest two isolated edges.
CosetCensus coset_census(const ElementSet& a,
                         std::optional<std::array<Graph::Edge, 2>> edges = std::nullopt);

// Translate A so that its smallest isolated edge starts at 0.
ElementSet normalize_for_census(const ElementSet& a);

}  // namespace sumsat
