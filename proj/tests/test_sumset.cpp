#include <gtest/gtest.h>

#include "sumsat/fuzz.hpp"
#include "sumsat/group.hpp"
#include "sumsat/rng.hpp"
#include "sumsat/sumset.hpp"

using namespace sumsat;

namespace {

ElementSet loop_sumset(const ElementSet& b, const ElementSet& c) {
  ElementSet out(b.rank());
  for (Element x : b.elements()) {
    for (Element y : c.elements()) out.insert(x ^ y);
  }
  return out;
}

std::vector<std::uint64_t> loop_counts(const ElementSet& a) {
  std::vector<std::uint64_t> n(a.universe(), 0);
  for (Element x : a.elements()) {
    for (Element y : a.elements()) ++n[x ^ y];
  }
  return n;
}

// Unordered pairs {x, y}, x may equal y.
ElementSet loop_unique(const ElementSet& a) {
  std::vector<int> n(a.universe(), 0);
  const auto el = a.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i; j < el.size(); ++j) ++n[el[i] ^ el[j]];
  }
  ElementSet out(a.rank());
  for (std::size_t d = 0; d < n.size(); ++d) {
    if (n[d] == 1) out.insert(static_cast<Element>(d));
  }
  return out;
}

bool oracle_sum_free(const ElementSet& a) { return !a.intersects(loop_sumset(a, a)); }

bool oracle_saturating(const ElementSet& a) {
  return (a | loop_sumset(a, a)) == ElementSet::full(a.rank());
}

bool oracle_minimal_saturating(const ElementSet& a) {
  if (!oracle_saturating(a)) return false;
  for (Element x : a.elements()) {
    if (oracle_saturating(without(a, x))) return false;
  }
  return true;
}

bool oracle_round(const ElementSet& a) {
  const ElementSet full = loop_sumset(a, a);
  for (Element x : a.elements()) {
    const ElementSet b = without(a, x);
    if (loop_sumset(b, b) == full) return false;
  }
  return true;
}

bool oracle_maximal_sum_free(const ElementSet& a) {
  return oracle_sum_free(a) && (a | loop_sumset(a, a)) == ElementSet::full(a.rank());
}

const GroupRank R3(3);
const ElementSet H3(R3, {0, 1, 2, 3});
const ElementSet A4(R3, {0, 1, 2, 4});

}  // namespace

TEST(Sumset, Examples) {
  EXPECT_EQ(doubling(ElementSet(R3, {1, 2})), ElementSet(R3, {0, 3}));
  const ElementSet b(R3, {1, 5, 6});
  EXPECT_EQ(sumset(b, ElementSet(R3, {0})), b);
  EXPECT_EQ(doubling(H3.translate(4)), H3);
}

TEST(Sumset, KernelsAgreeWithLoop) {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const GroupRank r(1 + static_cast<int>(rng.below(10)));
    const ElementSet b = random_set(r, rng, rng.unit());
    const ElementSet c = random_set(r, rng, rng.unit() * 0.3);
    const ElementSet want = loop_sumset(b, c);
    EXPECT_EQ(sumset(b, c), want);
    EXPECT_EQ(sumset(b, c, Kernel::Sparse), want);
    EXPECT_EQ(sumset(b, c, Kernel::Dense), want);
  }
  EXPECT_THROW(sumset(H3, ElementSet(GroupRank(4))), RankError);
}

TEST(RepCounts, Examples) {
  const auto t = rep_counts(ElementSet(R3, {1}));
  EXPECT_EQ(t.ordered(0), 1u);
  for (Element d = 1; d < 8; ++d) EXPECT_EQ(t.ordered(d), 0u);

  const auto u = rep_counts(A4);
  EXPECT_EQ(u.ordered(0), 4u);
  EXPECT_EQ(u.ordered(7), 0u);
  for (Element d : {1u, 2u, 4u, 3u, 5u, 6u}) {
    EXPECT_EQ(u.ordered(d), 2u);
    EXPECT_EQ(u.unordered(d), 1u);
  }
  EXPECT_EQ(u.unordered(0), 4u);
}

TEST(RepCounts, DenseSparseAgreeAndSumToSquare) {
  Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const GroupRank r(1 + static_cast<int>(rng.below(10)));
    const ElementSet a = random_set(r, rng, rng.unit());
    const auto want = loop_counts(a);
    const auto dense = rep_counts(a, Kernel::Dense);
    const auto sparse = rep_counts(a, Kernel::Sparse);
    EXPECT_EQ(dense.counts(), want);
    EXPECT_EQ(sparse.counts(), want);
    EXPECT_EQ(dense.total(), a.size() * a.size());
    EXPECT_EQ(dense.support(), loop_sumset(a, a));
  }
}

TEST(UniqueSums, Examples) {
  EXPECT_EQ(unique_sums(ElementSet(R3, {0, 5})), ElementSet(R3, {5}));
  EXPECT_EQ(unique_sums(A4), ElementSet(R3, {1, 2, 4, 3, 5, 6}));
  EXPECT_TRUE(unique_sums(H3.translate(4)).empty());
}

TEST(UniqueSums, MatchesPairOracleAndInvariants) {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const GroupRank r(1 + static_cast<int>(rng.below(8)));
    const ElementSet a = random_set(r, rng, rng.unit() * 0.6);
    const ElementSet d = unique_sums(a);
    EXPECT_EQ(d, loop_unique(a));
    EXPECT_TRUE(d.is_subset_of(loop_sumset(a, a)));
    if (a.size() >= 2) EXPECT_FALSE(d.contains(0));
    const Element g = static_cast<Element>(rng.below(r.order()));
    EXPECT_EQ(unique_sums(a.translate(g)), d);
  }
}

TEST(MultSumset, Examples) {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    const GroupRank r(1 + static_cast<int>(rng.below(8)));
    const ElementSet b = random_set(r, rng, rng.unit());
    const ElementSet c = random_set(r, rng, rng.unit());
    EXPECT_EQ(mult_sumset(b, c, 1), sumset(b, c));
    const auto k = 1 + rng.below(4);
    std::vector<std::uint64_t> n(r.order(), 0);
    for (Element x : b.elements()) {
      for (Element y : c.elements()) ++n[x ^ y];
    }
    ElementSet want(r);
    for (std::size_t d = 0; d < n.size(); ++d) {
      if (n[d] >= k) want.insert(static_cast<Element>(d));
    }
    EXPECT_EQ(mult_sumset(b, c, k), want);
    EXPECT_EQ(mult_sumset(b, c, k, Kernel::Dense), want);
    EXPECT_EQ(mult_sumset(b, c, k, Kernel::Sparse), want);
    if (b.size() + c.size() >= r.order() + k) EXPECT_EQ(mult_sumset(b, c, k), ElementSet::full(r));
  }
  EXPECT_TRUE(mult_sumset(A4, A4, 4).contains(0));
  EXPECT_THROW(mult_sumset(A4, A4, 0), std::invalid_argument);
}

TEST(Predicates, SumFreeExamples) {
  const GroupRank r2(2);
  const ElementSet s(r2, {1, 2});
  EXPECT_TRUE(is_sum_free(s).verdict);
  EXPECT_TRUE(is_maximal_sum_free(s).verdict);
  EXPECT_FALSE(is_sum_free(ElementSet(R3, {0, 3})).verdict);
  const auto rep = is_sum_free(ElementSet(R3, {1, 2, 3}));
  EXPECT_FALSE(rep.verdict);
  ASSERT_TRUE(rep.witness);
  EXPECT_TRUE(is_sum_free(ElementSet(R3)).verdict);
}

TEST(Predicates, SaturatingExamples) {
  EXPECT_TRUE(is_minimal_saturating(ElementSet(R3, {4, 5, 6, 7})).verdict);
  EXPECT_TRUE(is_minimal_saturating(ElementSet(R3, {4, 1, 2, 3})).verdict);
  const GroupRank r2(2);
  const ElementSet a(r2, {1, 2, 3});
  EXPECT_TRUE(is_saturating(a).verdict);
  const auto rep = is_minimal_saturating(a);
  EXPECT_FALSE(rep.verdict);
  ASSERT_TRUE(rep.witness);
  // every single removal keeps {1,2,3} saturating except none, so any witness must be removable
  ASSERT_EQ(rep.witness->elements.size(), 1u);
  EXPECT_TRUE(oracle_saturating(without(a, rep.witness->elements[0])));
  EXPECT_THROW(is_saturating(ElementSet(R3, {0, 1})), PreconditionError);
  EXPECT_THROW(is_minimal_saturating(ElementSet(R3, {0, 1})), PreconditionError);
}

TEST(Predicates, RoundExamples) {
  EXPECT_TRUE(is_round(ElementSet(R3, {5})).verdict);
  EXPECT_FALSE(is_round(H3).verdict);
  // g + (S u {0}) with S sum-free
  const ElementSet s(R3, {1, 2, 4, 7});
  ASSERT_TRUE(sum_free(s));
  for (Element g = 0; g < 8; ++g) EXPECT_TRUE(is_round((s | ElementSet(R3, {0})).translate(g)).verdict);
}

TEST(Predicates, ExhaustiveAgainstOraclesUpToRank4) {
  for (int rv = 1; rv <= 4; ++rv) {
    const GroupRank r(rv);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r.order()); ++mask) {
      ElementSet a(r);
      for (Element x = 0; x < r.order(); ++x) {
        if (mask >> x & 1u) a.insert(x);
      }
      ASSERT_EQ(sum_free(a), oracle_sum_free(a)) << mask;
      ASSERT_EQ(maximal_sum_free(a), oracle_maximal_sum_free(a)) << mask;
      ASSERT_EQ(round_set(a), oracle_round(a)) << mask;
      ASSERT_EQ(is_round(a).verdict, round_set(a));
      if (!a.contains(0)) {
        ASSERT_EQ(saturating(a), oracle_saturating(a)) << mask;
        ASSERT_EQ(minimal_saturating(a), oracle_minimal_saturating(a)) << mask;
        ASSERT_EQ(is_minimal_saturating(a).verdict, minimal_saturating(a));
        // maximal sum-free <=> minimal saturating without internal lines
        ASSERT_EQ(maximal_sum_free(a), minimal_saturating(a) && sum_free(a)) << mask;
        if (minimal_saturating(a)) {
          ASSERT_TRUE(one_saturating_two_round_check(a).verdict) << mask;
        }
      }
    }
  }
}

TEST(Predicates, FalseVerdictsCarryWitnesses) {
  Rng rng(25);
  for (int i = 0; i < 300; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(6)));
    ElementSet a = random_set(r, rng, rng.unit() * 0.5);
    a.erase(0);
    for (const auto& rep : {is_sum_free(a), is_maximal_sum_free(a), is_saturating(a),
                            is_minimal_saturating(a), is_round(a)}) {
      if (!rep.verdict) EXPECT_TRUE(rep.witness.has_value()) << rep.predicate;
    }
  }
}

TEST(Predicates, LinearInvariance) {
  Rng rng(26);
  for (int i = 0; i < 200; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(5)));
    ElementSet a = random_set(r, rng, rng.unit() * 0.6);
    a.erase(0);
    // random invertible map via column operations on the identity
    std::vector<Element> cols(static_cast<std::size_t>(r.value()));
    for (int k = 0; k < r.value(); ++k) cols[static_cast<std::size_t>(k)] = Element{1} << k;
    for (int s = 0; s < 20; ++s) {
      const auto p = rng.below(cols.size()), q = rng.below(cols.size());
      if (p != q) cols[p] ^= cols[q];
    }
    ElementSet b(r);
    a.for_each([&](Element x) {
      Element y = 0;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (x >> k & 1u) y ^= cols[k];
      }
      b.insert(y);
    });
    EXPECT_EQ(sum_free(a), sum_free(b));
    EXPECT_EQ(maximal_sum_free(a), maximal_sum_free(b));
    EXPECT_EQ(saturating(a), saturating(b));
    EXPECT_EQ(minimal_saturating(a), minimal_saturating(b));
    EXPECT_EQ(round_set(a), round_set(b));
  }
}

TEST(Checks, KneserExamples) {
  EXPECT_TRUE(kneser_check(H3, H3).verdict);
  Rng rng(27);
  for (int i = 0; i < 2000; ++i) {
    const GroupRank r(1 + static_cast<int>(rng.below(8)));
    ElementSet b = random_set(r, rng, rng.unit());
    ElementSet c = random_set(r, rng, rng.unit());
    if (b.empty()) b.insert(0);
    if (c.empty()) c.insert(0);
    // recompute both sides by definition
    const ElementSet bc = loop_sumset(b, c);
    Subgroup h = period(bc);
    const ElementSet bh = loop_sumset(b, h.members());
    const ElementSet ch = loop_sumset(c, h.members());
    const bool applies = bc.size() + 1 <= b.size() + c.size();
    const bool holds = bc.size() + h.order() == bh.size() + ch.size();
    const auto rep = kneser_check(b, c);
    EXPECT_EQ(rep.verdict, !applies || holds);
    EXPECT_TRUE(rep.verdict);
  }
  EXPECT_THROW(kneser_check(ElementSet(R3), H3), PreconditionError);
}

TEST(Checks, PigeonholeAndS2) {
  Rng rng(28);
  for (int i = 0; i < 500; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(6)));
    const ElementSet b = random_set(r, rng, 0.5 + rng.unit() / 2);
    const ElementSet c = random_set(r, rng, 0.5 + rng.unit() / 2);
    if (b.size() + c.size() >= r.order() + 1) {
      const std::uint64_t k = b.size() + c.size() - r.order();
      EXPECT_TRUE(php_check(b, c, k).verdict);
    }
    if (b.size() >= 2 && c.size() >= 2) EXPECT_TRUE(s2_bound_check(b, c).verdict);
  }
  const ElementSet g = ElementSet::full(R3);
  const auto rep = s2_bound_check(g, g);
  EXPECT_TRUE(rep.verdict);
  EXPECT_EQ(rep.details["bound"].get<long long>(), 7);
  const auto vac = s2_bound_check(ElementSet(R3, {1, 2}), ElementSet(R3, {4, 7}));
  EXPECT_TRUE(vac.verdict);
  EXPECT_LE(vac.details["bound"].get<long long>(), 0);
  EXPECT_THROW(s2_bound_check(ElementSet(R3, {1}), g), PreconditionError);
}

TEST(Checks, Alldisjoint) {
  for (int rv = 2; rv <= 8; ++rv) {
    const GroupRank r(rv);
    const auto [b, c] = alldisjoint_sharpness_pair(r);
    EXPECT_EQ(b.size() + c.size(), r.order() / 2);
    const ElementSet bc = loop_sumset(b, c);
    EXPECT_FALSE(b.intersects(c));
    EXPECT_FALSE(b.intersects(bc));
    EXPECT_FALSE(c.intersects(bc));
    EXPECT_TRUE(alldisjoint_sharpness_check(r).verdict);
  }
  const GroupRank r2(2);
  EXPECT_THROW(alldisjoint_check(ElementSet(r2, {1}), ElementSet(r2, {2})), PreconditionError);
  EXPECT_THROW(alldisjoint_check(ElementSet(R3, {1, 2, 3}), ElementSet(R3, {3, 4})), PreconditionError);
  EXPECT_TRUE(alldisjoint_check(ElementSet(R3, {1, 2, 3}), ElementSet(R3, {4, 5})).verdict);
}

TEST(Checks, Sfnotround) {
  const GroupRank r5(5);
  ElementSet s(r5);
  for (Element x = 16; x < 32; ++x) s.insert(x);
  const auto rep = sfnotround_check(s, 2);
  EXPECT_TRUE(rep.verdict);
  for (Element x = 0; x < 16; ++x) EXPECT_EQ(rep_counts(s).unordered(x), x == 0 ? 16u : 8u);
  // |S| = 2^(r-2) + kappa exactly is rejected
  const GroupRank r4(4);
  const ElementSet t(r4, {8, 9, 10, 11, 12, 13});
  ASSERT_TRUE(sum_free(t));
  EXPECT_THROW(sfnotround_check(t, 2), PreconditionError);
  EXPECT_THROW(sfnotround_check(s, 1), PreconditionError);
  EXPECT_THROW(sfnotround_check(ElementSet(r5, {1, 2, 3}), 2), PreconditionError);
}
