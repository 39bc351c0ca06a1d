#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef SUMSAT_MAX_RANK
#define SUMSAT_MAX_RANK 24
#endif

namespace sumsat {

// Elements of F_2^r are r-bit integers; bit i is coordinate i and the group
// law is XOR.
using Element = std::uint32_t;

inline constexpr int kMaxRank = SUMSAT_MAX_RANK;

class RankError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GroupRank {
 public:
  // Rank 0 is the trivial group; it only shows up as the image of a quotient.
  explicit GroupRank(int r);

  int value() const { return r_; }
  std::size_t order() const { return std::size_t{1} << r_; }
  Element mask() const { return static_cast<Element>(order() - 1); }
  bool contains(Element x) const { return x <= mask(); }

  friend bool operator==(GroupRank, GroupRank) = default;

 private:
  int r_;
};

// Group law with range checking; the hot paths just XOR.
Element add(GroupRank r, Element x, Element y);

// A subset of F_2^r stored as a 2^r-bit bitset.
class ElementSet {
 public:
  explicit ElementSet(GroupRank r);
  ElementSet(GroupRank r, std::span<const Element> elements);
  ElementSet(GroupRank r, std::initializer_list<Element> elements);

  static ElementSet full(GroupRank r);
  static ElementSet nonzero(GroupRank r);

  GroupRank rank() const { return rank_; }
  std::size_t universe() const { return rank_.order(); }

  bool contains(Element x) const {
    return x < universe() && ((words_[x >> 6] >> (x & 63)) & 1u);
  }
  void insert(Element x);
  void erase(Element x);

  std::size_t size() const;
  bool empty() const;
  // Smallest element; the set must be non-empty.
  Element min() const;
  Element max() const;

  std::vector<Element> elements() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<Element>((w << 6) | static_cast<unsigned>(__builtin_ctzll(bits))));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  ElementSet translate(Element g) const;
  ElementSet complement() const;

  ElementSet& operator|=(const ElementSet& o);
  ElementSet& operator&=(const ElementSet& o);
  ElementSet& operator-=(const ElementSet& o);
  ElementSet& operator^=(const ElementSet& o);

  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend ElementSet operator^(ElementSet a, const ElementSet& b) { return a ^= b; }

  bool intersects(const ElementSet& o) const;
  bool is_subset_of(const ElementSet& o) const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.rank_ == b.rank_ && a.words_ == b.words_;
  }
  // Bitset lexicographic order: A < B iff the smallest element of the
  // symmetric difference lies in A.
  friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b);

 private:
  void require_same_rank(const ElementSet& o) const;
  void clear_padding();

  GroupRank rank_;
  std::vector<std::uint64_t> words_;
};

ElementSet with(ElementSet s, Element x);
ElementSet without(ElementSet s, Element x);

// In-word XOR-translation of a 64-bit block: bit i moves to bit i ^ low,
// low < 64.
std::uint64_t xor_permute_word(std::uint64_t w, unsigned low);

// A subgroup held by its reduced row-echelon basis (pivot = highest set bit,
// every other basis vector is zero at each pivot), sorted ascending.
class Subgroup {
 public:
  explicit Subgroup(GroupRank r);  // trivial subgroup {0}

  GroupRank rank() const { return members_.rank(); }
  int dim() const { return static_cast<int>(basis_.size()); }
  std::size_t order() const { return std::size_t{1} << basis_.size(); }
  std::size_t index() const { return rank().order() >> basis_.size(); }
  const std::vector<Element>& basis() const { return basis_; }
  const ElementSet& members() const { return members_; }
  bool contains(Element x) const { return members_.contains(x); }

  // Smallest element of the coset x + H.
  Element reduce(Element x) const;
  // Coordinates of x + H in the quotient: the non-pivot bits of reduce(x).
  Element project(Element x) const;
  // Inverse of project on the transversal {reduce(x)}.
  Element lift(Element q) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.rank() == b.rank() && a.basis_ == b.basis_;
  }

  friend Subgroup span(const ElementSet& generators);
  friend Subgroup span(GroupRank r, std::span<const Element> generators);

 private:
  void insert_generator(Element g);
  void rebuild_members();

  std::vector<Element> basis_;
  Element pivot_mask_ = 0;
  ElementSet members_;
};

Subgroup span(const ElementSet& generators);
Subgroup span(GroupRank r, std::span<const Element> generators);

// pi(B) = {g : B + g = B}; pi(empty) = pi(G) = G.
Subgroup period(const ElementSet& b);

// Image of G / H; the representatives are the coset minima.
struct QuotientView {
  Subgroup subgroup;
  GroupRank image_rank;
  std::vector<Element> transversal;  // indexed by quotient element
};

QuotientView quotient(const Subgroup& h);

// phi_H(B) as a subset of the rank (r - dim H) quotient group.
ElementSet quotient_project(const ElementSet& b, const Subgroup& h);

// Number of elements of b in each H-coset, indexed by quotient element.
std::vector<std::size_t> coset_counts(const ElementSet& b, const Subgroup& h);

}  // namespace sumsat
