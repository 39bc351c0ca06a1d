#include "sumsat/group.hpp"

#include <algorithm>
#include <bit>

namespace sumsat {

namespace {

std::size_t word_count(GroupRank r) { return (r.order() + 63) / 64; }

constexpr std::uint64_t kSwapMasks[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
    0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
};

}  // namespace

GroupRank::GroupRank(int r) : r_(r) {
  if (r < 0 || r > kMaxRank) {
    throw RankError("rank " + std::to_string(r) + " outside [0, " +
                    std::to_string(kMaxRank) + "]");
  }
}

Element add(GroupRank r, Element x, Element y) {
  if (!r.contains(x) || !r.contains(y)) {
    throw RankError("element outside F_2^" + std::to_string(r.value()));
  }
  return x ^ y;
}

std::uint64_t xor_permute_word(std::uint64_t w, unsigned low) {
  for (unsigned j = 0; j < 6; ++j) {
    if (low & (1u << j)) {
      const unsigned s = 1u << j;
      w = ((w & kSwapMasks[j]) << s) | ((w >> s) & kSwapMasks[j]);
    }
  }
  return w;
}

ElementSet::ElementSet(GroupRank r) : rank_(r), words_(word_count(r), 0) {}

ElementSet::ElementSet(GroupRank r, std::span<const Element> elements) : ElementSet(r) {
  for (Element x : elements) insert(x);
}

ElementSet::ElementSet(GroupRank r, std::initializer_list<Element> elements)
    : ElementSet(r, std::span<const Element>(elements.begin(), elements.size())) {}

ElementSet ElementSet::full(GroupRank r) {
  ElementSet s(r);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.clear_padding();
  return s;
}

ElementSet ElementSet::nonzero(GroupRank r) {
  ElementSet s = full(r);
  s.erase(0);
  return s;
}

void ElementSet::clear_padding() {
  if (universe() < 64) words_[0] &= (std::uint64_t{1} << universe()) - 1;
}

void ElementSet::insert(Element x) {
  if (x >= universe()) {
    throw RankError("element " + std::to_string(x) + " outside F_2^" +
                    std::to_string(rank_.value()));
  }
  words_[x >> 6] |= std::uint64_t{1} << (x & 63);
}

void ElementSet::erase(Element x) {
  if (x < universe()) words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
}

std::size_t ElementSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ElementSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

Element ElementSet::min() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return static_cast<Element>((w << 6) | std::countr_zero(words_[w]));
  }
  throw std::logic_error("min() of empty set");
}

Element ElementSet::max() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w]) return static_cast<Element>((w << 6) | (63 - std::countl_zero(words_[w])));
  }
  throw std::logic_error("max() of empty set");
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for_each([&](Element x) { out.push_back(x); });
  return out;
}

ElementSet ElementSet::translate(Element g) const {
  if (g >= universe()) throw RankError("translation outside the group");
  ElementSet out(rank_);
  const std::size_t high = g >> 6;
  const unsigned low = g & 63;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w ^ high] = low ? xor_permute_word(words_[w], low) : words_[w];
  }
  return out;
}

ElementSet ElementSet::complement() const {
  ElementSet out(rank_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  out.clear_padding();
  return out;
}

void ElementSet::require_same_rank(const ElementSet& o) const {
  if (!(rank_ == o.rank_)) {
    throw RankError("rank mismatch: " + std::to_string(rank_.value()) + " vs " +
                    std::to_string(o.rank_.value()));
  }
}

ElementSet& ElementSet::operator|=(const ElementSet& o) {
  require_same_rank(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& o) {
  require_same_rank(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& o) {
  require_same_rank(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
  return *this;
}

ElementSet& ElementSet::operator^=(const ElementSet& o) {
  require_same_rank(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

bool ElementSet::intersects(const ElementSet& o) const {
  require_same_rank(o);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & o.words_[w]) return true;
  }
  return false;
}

bool ElementSet::is_subset_of(const ElementSet& o) const {
  require_same_rank(o);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~o.words_[w]) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) {
  if (auto c = a.rank_.value() <=> b.rank_.value(); c != 0) return c;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff) {
      const std::uint64_t lowest = diff & (~diff + 1);
      return (a.words_[w] & lowest) ? std::strong_ordering::less
                                    : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

ElementSet with(ElementSet s, Element x) {
  s.insert(x);
  return s;
}

ElementSet without(ElementSet s, Element x) {
  s.erase(x);
  return s;
}

Subgroup::Subgroup(GroupRank r) : members_(r) { members_.insert(0); }

void Subgroup::insert_generator(Element g) {
  for (Element b : basis_) {
    const Element pivot = std::bit_floor(b);
    if (g & pivot) g ^= b;
  }
  if (g == 0) return;
  const Element pivot = std::bit_floor(g);
  for (Element& b : basis_) {
    if (b & pivot) b ^= g;
  }
  basis_.push_back(g);
  std::sort(basis_.begin(), basis_.end());
  pivot_mask_ |= pivot;
}

void Subgroup::rebuild_members() {
  ElementSet m(rank());
  m.insert(0);
  std::vector<Element> list{0};
  for (Element b : basis_) {
    const std::size_t n = list.size();
    for (std::size_t i = 0; i < n; ++i) {
      list.push_back(list[i] ^ b);
      m.insert(list[i] ^ b);
    }
  }
  members_ = std::move(m);
}

Element Subgroup::reduce(Element x) const {
  for (Element b : basis_) {
    if (x & std::bit_floor(b)) x ^= b;
  }
  return x;
}

Element Subgroup::project(Element x) const {
  x = reduce(x);
  Element q = 0;
  int out = 0;
  for (int bit = 0; bit < rank().value(); ++bit) {
    if (pivot_mask_ & (Element{1} << bit)) continue;
    if (x & (Element{1} << bit)) q |= Element{1} << out;
    ++out;
  }
  return q;
}

Element Subgroup::lift(Element q) const {
  Element x = 0;
  int in = 0;
  for (int bit = 0; bit < rank().value(); ++bit) {
    if (pivot_mask_ & (Element{1} << bit)) continue;
    if (q & (Element{1} << in)) x |= Element{1} << bit;
    ++in;
  }
  return x;
}

Subgroup span(GroupRank r, std::span<const Element> generators) {
  Subgroup h(r);
  for (Element g : generators) {
    if (!r.contains(g)) throw RankError("generator outside the group");
    h.insert_generator(g);
    if (static_cast<int>(h.basis_.size()) == r.value()) break;
  }
  h.rebuild_members();
  return h;
}

Subgroup span(const ElementSet& generators) {
  const auto elems = generators.elements();
  return span(generators.rank(), elems);
}

Subgroup period(const ElementSet& b) {
  const GroupRank r = b.rank();
  // pi(B) = pi(complement), so scan whichever side is smaller.
  const ElementSet c = b.complement();
  const ElementSet& side = (c.size() < b.size()) ? c : b;
  if (side.empty()) return span(ElementSet::full(r));
  // Every period g satisfies b0 + g in B, so g ranges over b0 + B.
  const Element b0 = side.min();
  std::vector<Element> shifts;
  side.for_each([&](Element x) {
    const Element g = b0 ^ x;
    if (g == 0 || side.translate(g) == side) shifts.push_back(g);
  });
  return span(r, shifts);
}

QuotientView quotient(const Subgroup& h) {
  const GroupRank image(h.rank().value() - h.dim());
  std::vector<Element> transversal(image.order());
  for (Element q = 0; q < image.order(); ++q) transversal[q] = h.lift(q);
  return QuotientView{h, image, std::move(transversal)};
}

ElementSet quotient_project(const ElementSet& b, const Subgroup& h) {
  if (!(b.rank() == h.rank())) throw RankError("rank mismatch in quotient_project");
  ElementSet out(GroupRank(h.rank().value() - h.dim()));
  b.for_each([&](Element x) { out.insert(h.project(x)); });
  return out;
}

std::vector<std::size_t> coset_counts(const ElementSet& b, const Subgroup& h) {
  if (!(b.rank() == h.rank())) throw RankError("rank mismatch in coset_counts");
  std::vector<std::size_t> counts(h.index(), 0);
  b.for_each([&](Element x) { ++counts[h.project(x)]; });
  return counts;
}

}  // namespace sumsat
