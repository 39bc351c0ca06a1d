#pragma once

#include <cstdint>
#include <vector>

#include "sumsat/group.hpp"
#include "sumsat/kernels.hpp"
#include "sumsat/report.hpp"

namespace sumsat {

enum class Kernel { Auto, Sparse, Dense };

// B + C. Auto picks the transform kernel once the smaller operand has at
// least 2^r / r elements, otherwise pairwise XOR or translate-accumulate.
ElementSet sumset(const ElementSet& b, const ElementSet& c, Kernel kernel = Kernel::Auto);
inline ElementSet doubling(const ElementSet& a, Kernel kernel = Kernel::Auto) {
  return sumset(a, a, kernel);
}

// Ordered counts N(d) = #{(a1, a2) in A x A : a1 + a2 = d}.
class RepCountTable {
 public:
  RepCountTable(GroupRank r, kernels::Counts counts, std::size_t set_size)
      : rank_(r), counts_(std::move(counts)), set_size_(set_size) {}

  GroupRank rank() const { return rank_; }
  std::uint64_t ordered(Element d) const { return counts_.at(d); }
  // Representations up to the order of summands; a + a counts once.
  std::uint64_t unordered(Element d) const {
    return d == 0 ? static_cast<std::uint64_t>(set_size_) : counts_.at(d) / 2;
  }
  std::uint64_t total() const;
  const kernels::Counts& counts() const { return counts_; }

  ElementSet support() const;
  ElementSet at_least(std::uint64_t k) const;

 private:
  GroupRank rank_;
  kernels::Counts counts_;
  std::size_t set_size_;
};

RepCountTable rep_counts(const ElementSet& a, Kernel kernel = Kernel::Auto);

// D(A): elements with exactly one unordered representation in A + A.
ElementSet unique_sums(const ElementSet& a);

// B (+)_k C: elements with at least k ordered representations b + c.
ElementSet mult_sumset(const ElementSet& b, const ElementSet& c, std::uint64_t k,
                       Kernel kernel = Kernel::Auto);

// Plain verdicts; the report functions below are built on these.
bool sum_free(const ElementSet& a);
bool maximal_sum_free(const ElementSet& a);
bool saturating(const ElementSet& a);          // throws if 0 is in a
bool minimal_saturating(const ElementSet& a);  // throws if 0 is in a
bool round_set(const ElementSet& a);

PredicateReport is_sum_free(const ElementSet& a);
PredicateReport is_maximal_sum_free(const ElementSet& a);
PredicateReport is_saturating(const ElementSet& a);
PredicateReport is_minimal_saturating(const ElementSet& a);
PredicateReport is_round(const ElementSet& a);

// Kneser: if |B+C| <= |B|+|C|-1 then |B+C| = |B+H|+|C+H|-|H|, H = pi(B+C).
PredicateReport kneser_check(const ElementSet& b, const ElementSet& c);

// Pigeonhole: |B|+|C| >= 2^r + k forces every element to have k ordered
// representations.
PredicateReport php_check(const ElementSet& b, const ElementSet& c, std::uint64_t k);

// Disjoint B, C with |B|+|C| > 2^(r-1): B u C meets B + C.
PredicateReport alldisjoint_check(const ElementSet& b, const ElementSet& c);

// Sets B = e1 + H, C = e2 + H with H of index 4, so |B|+|C| = 2^(r-1) and
// B, C, B + C are pairwise disjoint. Requires r >= 2.
struct SharpPair {
  ElementSet b;
  ElementSet c;
};
SharpPair alldisjoint_sharpness_pair(GroupRank r);
PredicateReport alldisjoint_sharpness_check(GroupRank r);

// |B (+)_2 C| >= min(2|B|+2|C|-4-2^r, |B|-1) for |B|, |C| >= 2.
PredicateReport s2_bound_check(const ElementSet& b, const ElementSet& c);

// Sum-free S with |S| > 2^(r-2) + kappa: every element of 2S has at least
// kappa unordered representations.
PredicateReport sfnotround_check(const ElementSet& s, int kappa);

// A minimal 1-saturating: A or A u {0} is round.
PredicateReport one_saturating_two_round_check(const ElementSet& a);

}  // namespace sumsat
