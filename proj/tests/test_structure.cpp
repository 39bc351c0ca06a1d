#include <gtest/gtest.h>

#include <map>
#include <set>

#include "sumsat/fuzz.hpp"
#include "sumsat/rng.hpp"
#include "sumsat/structure.hpp"
#include "sumsat/sumset.hpp"
#include "sumsat/urgraph.hpp"

using namespace sumsat;

namespace {

const GroupRank R3(3);
const GroupRank R4(4);
const GroupRank R5(5);

ElementSet from_mask(GroupRank r, std::uint64_t mask) {
  ElementSet a(r);
  for (Element x = 0; x < r.order(); ++x) {
    if (mask >> x & 1u) a.insert(x);
  }
  return a;
}

std::set<Element> closure(std::vector<Element> gens) {
  std::set<Element> s{0};
  for (Element g : gens) {
    std::set<Element> next = s;
    for (Element x : s) next.insert(x ^ g);
    s = next;
  }
  return s;
}

Element coset_min(Element x, const std::set<Element>& h) {
  Element lo = x;
  for (Element y : h) lo = std::min(lo, x ^ y);
  return lo;
}

}  // namespace

TEST(Decompose, CosetDecomposesAndRoundTrips) {
  const ElementSet a(R3, {4, 5, 6, 7});
  const auto ds = decompose_saturating(a);
  ASSERT_FALSE(ds.empty());
  for (const auto& d : ds) {
    EXPECT_EQ(d.expand(), a);
    EXPECT_TRUE(maximal_sum_free(d.base));
  }
  EXPECT_THROW(decompose_saturating(ElementSet(R3, {0, 1})), PreconditionError);
}

TEST(Decompose, TriangleExampleHasNoDecomposition) {
  const ElementSet a = construct_product(R4, 2);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_TRUE(minimal_saturating(a));
  EXPECT_TRUE(decompose_saturating(a).empty());
  for (int rv = 5; rv <= 7; ++rv) {
    const GroupRank r(rv);
    const ElementSet p = construct_product(r, 2);
    EXPECT_EQ(p.size(), r.order() / 4 + 2);
    EXPECT_TRUE(minimal_saturating(p));
    EXPECT_TRUE(decompose_saturating(p).empty());
  }
}

TEST(Decompose, ExhaustiveRank4MatchesShiftOracle) {
  for (std::uint64_t mask = 0; mask < (1u << 16); mask += 2) {
    const ElementSet a = from_mask(R4, mask);
    // oracle: every shift in the group, checked by re-expansion
    std::set<Element> want;
    for (Element s = 0; s < 16; ++s) {
      ElementSet base = (a | ElementSet(R4, {0})).translate(s);
      base.erase(0);
      if (!maximal_sum_free(base)) continue;
      ElementSet back = (base | ElementSet(R4, {0})).translate(s);
      back.erase(0);
      if (back == a) want.insert(s);
    }
    std::set<Element> got;
    for (const auto& d : decompose_saturating(a)) {
      ASSERT_EQ(d.expand(), a);
      got.insert(d.shift);
    }
    ASSERT_EQ(got, want) << mask;
    if (!want.empty()) ASSERT_TRUE(minimal_saturating(a)) << mask;
  }
}

TEST(DecomposeRound, Examples) {
  const auto ds = decompose_round(ElementSet(R3, {1, 3}));
  ASSERT_FALSE(ds.empty());
  bool found = false;
  for (const auto& d : ds) {
    EXPECT_EQ(d.expand(), ElementSet(R3, {1, 3}));
    if (d.shift == 1) {
      found = true;
      EXPECT_EQ(d.base, ElementSet(R3, {2}));
    }
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(decompose_round(ElementSet(R3, {4, 5, 6, 7})).empty());
  EXPECT_THROW(decompose_round(ElementSet(R3, {1})), PreconditionError);
}

TEST(DecomposeRound, AgreesWithSpanningStars) {
  Rng rng(41);
  for (int i = 0; i < 3000; ++i) {
    const GroupRank r(3 + static_cast<int>(rng.below(5)));
    const ElementSet a = random_round_set(r, rng);
    if (a.size() < 2) continue;
    ElementSet shifts(r);
    for (const auto& d : decompose_round(a)) {
      ASSERT_EQ(d.expand(), a);
      ASSERT_TRUE(sum_free(d.base));
      shifts.insert(d.shift);
    }
    ASSERT_EQ(shifts, spanning_star_centers(build_urgraph(a)));
  }
}

TEST(Classify, CosetAndFivePoint) {
  for (int rv = 2; rv <= 7; ++rv) {
    const GroupRank r(rv);
    const ElementSet s = construct_coset(r, 1, 1);
    ASSERT_TRUE(maximal_sum_free(s));
    const auto c = classify_max_sumfree(s);
    EXPECT_EQ(c.tag, SumfreeTag::IndexTwoCoset);
    ASSERT_TRUE(c.coset_subgroup);
    EXPECT_EQ(c.coset_subgroup->order(), r.order() / 2);
  }
  const ElementSet f = construct_five_point(R5);
  EXPECT_EQ(f.size(), 10u);
  ASSERT_TRUE(maximal_sum_free(f));
  const auto c = classify_max_sumfree(f);
  EXPECT_EQ(c.tag, SumfreeTag::FivePointForm);
  ASSERT_TRUE(c.period_subgroup);
  EXPECT_EQ(c.period_subgroup->index(), 16u);
  EXPECT_EQ(c.quotient_points.size(), 5u);
  EXPECT_STREQ(to_string(SumfreeTag::FivePointForm), "five-point-form");
  EXPECT_THROW(classify_max_sumfree(ElementSet(R3, {1, 2, 3})), PreconditionError);
}

TEST(Classify, FivePointAtRank4) {
  // trivial period, index 16
  const ElementSet f = construct_five_point(R4);
  EXPECT_EQ(classify_max_sumfree(f).tag, SumfreeTag::FivePointForm);
  const auto rep = large_sumfree_form_check(construct_coset(R5, 3, 1));
  EXPECT_TRUE(rep.verdict);
}

TEST(Constructions, SmallExamples) {
  EXPECT_EQ(construct_coset(R3, 4, 4), ElementSet(R3, {4, 5, 6, 7}));
  EXPECT_EQ(construct_punctured_subgroup(R3, 4, 4), ElementSet(R3, {4, 1, 2, 3}));
  EXPECT_TRUE(minimal_saturating(construct_coset(R3, 4, 4)));
  EXPECT_TRUE(minimal_saturating(construct_punctured_subgroup(R3, 4, 4)));
  EXPECT_THROW(construct_coset(R3, 4, 1), PreconditionError);
  EXPECT_THROW(construct_coset(R3, 0, 1), PreconditionError);
  EXPECT_THROW(construct_product(R3, 1), PreconditionError);
  EXPECT_THROW(construct_five_point(R3), PreconditionError);
}

TEST(Constructions, RandomFunctionalsAreMinimal) {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(7)));
    const Element u = 1 + static_cast<Element>(rng.below(r.order() - 1));
    Element g;
    do {
      g = static_cast<Element>(rng.below(r.order()));
    } while (__builtin_parity(g & u) == 0);
    EXPECT_TRUE(minimal_saturating(construct_coset(r, u, g)));
    EXPECT_TRUE(minimal_saturating(construct_punctured_subgroup(r, u, g)));
  }
}

TEST(Constructions, ShiftedCapsOfMaximalSetsAreMinimal) {
  Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(6)));
    const ElementSet s = random_sum_free(r, rng);
    if (!maximal_sum_free(s)) continue;
    const auto el = s.elements();
    const Element shift = rng.below(2) ? 0 : el[rng.below(el.size())];
    const ElementSet a = construct_shifted_cap(s, shift);
    ASSERT_TRUE(minimal_saturating(a));
    bool found = false;
    for (const auto& d : decompose_saturating(a)) found |= d.base == s && d.shift == shift;
    EXPECT_TRUE(found);
  }
}

TEST(Constructions, CapReplacement) {
  Rng rng(44);
  for (int i = 0; i < 200; ++i) {
    const GroupRank r(3 + static_cast<int>(rng.below(4)));
    const ElementSet s = random_sum_free(r, rng);
    if (s.empty()) continue;
    const auto el = s.elements();
    const Element fixed = el[rng.below(el.size())];
    ElementSet want(r, {fixed});
    for (Element x : el) {
      if (x != fixed) want.insert(x ^ fixed);
    }
    EXPECT_EQ(construct_cap_replacement(s, fixed), want);
  }
}

TEST(Constructions, CapReplacementNotCapAtRank6) {
  const GroupRank r6(6);
  for (const ElementSet& s : {construct_coset(r6, 32, 32), construct_five_point(r6)}) {
    ASSERT_GT(s.size(), 18u);
    const ElementSet a = construct_cap_replacement(s, s.min());
    EXPECT_FALSE(sum_free(a));
  }
}

TEST(Blocking, HyperplaneComplementIsBlocking) {
  for (int rv = 2; rv <= 6; ++rv) {
    const GroupRank r(rv);
    ElementSet h = construct_coset(r, 1, 1) ^ ElementSet::full(r);
    h.erase(0);
    EXPECT_TRUE(is_blocking(h).verdict);
    EXPECT_TRUE(is_minimal_blocking(h).verdict);
  }
  EXPECT_THROW(is_blocking(ElementSet(R3, {0, 1})), PreconditionError);
}

TEST(Blocking, ComplementDuality) {
  Rng rng(45);
  for (int i = 0; i < 10000; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(4)));
    ElementSet b = random_set(r, rng, rng.unit());
    b.erase(0);
    const ElementSet cap = point_complement(b);
    // a cap is a sum-free set; a complete cap a maximal one
    ASSERT_EQ(is_blocking(b).verdict, sum_free(cap));
    ASSERT_EQ(is_minimal_blocking(b).verdict, maximal_sum_free(cap));
  }
}

TEST(Blocking, TangentConstruction) {
  Rng rng(46);
  for (int i = 0; i < 500; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(5)));
    ElementSet b = random_set(r, rng, rng.unit());
    b.erase(0);
    const ElementSet outside = ElementSet::nonzero(r) - b;
    if (outside.empty()) continue;
    const auto el = outside.elements();
    const Element s = el[rng.below(el.size())];
    ElementSet want(r, {s});
    b.for_each([&](Element x) {
      if (!b.contains(x ^ s)) want.insert(x);
    });
    EXPECT_EQ(tangent_construction(b, s), want);
  }
  EXPECT_THROW(tangent_construction(ElementSet(R3, {1}), 1), PreconditionError);
}

TEST(Blocking, FormsAgreeWithDecompositionRank4) {
  std::size_t seen = 0;
  for (std::uint64_t mask = 0; mask < (1u << 16); mask += 2) {
    const ElementSet a = from_mask(R4, mask);
    if (a.size() < 8 || !minimal_saturating(a)) continue;
    ++seen;
    const auto forms = blocking_forms(a);
    ASSERT_EQ(forms.empty(), decompose_saturating(a).empty()) << mask;
    for (const auto& f : forms) {
      ASSERT_TRUE(is_minimal_blocking(f.b).verdict);
      ASSERT_EQ(f.s ? tangent_construction(f.b, *f.s) : point_complement(f.b), a);
    }
  }
  EXPECT_GT(seen, 0u);
}

TEST(Census, PlantedFixturesAgreeWithBucketing) {
  Rng rng(47);
  int built = 0;
  for (int attempt = 0; attempt < 200 && built < 20; ++attempt) {
    const GroupRank r(6);
    const auto a = generate_census_set(r, rng);
    if (!a) continue;
    ++built;
    ASSERT_TRUE(a->contains(0));
    const CosetCensus c = coset_census(*a);
    EXPECT_TRUE(c.sum_premise);
    EXPECT_TRUE(c.violations.empty()) << c.violations.front();
    EXPECT_TRUE(c.coset_sum_identity);
    EXPECT_TRUE(c.weighted_sum_identity);

    const auto l = closure({c.a1, c.a2, c.a3});
    ASSERT_EQ(l.size(), 8u);
    const auto km = closure({c.a3, c.a1 ^ c.a2});
    const auto kp = closure({c.a2, c.a1 ^ c.a3});
    const ElementSet d = unique_sums(*a);
    std::map<Element, std::size_t> a_count, d_count;
    std::map<Element, std::set<Element>> km_img, kp_img;
    a->for_each([&](Element x) {
      const Element rep = coset_min(x, l);
      ++a_count[rep];
      km_img[rep].insert(coset_min(x, km));
      kp_img[rep].insert(coset_min(x, kp));
    });
    d.for_each([&](Element x) { ++d_count[coset_min(x, l)]; });
    ASSERT_EQ(c.cosets.size(), 8u);
    EXPECT_EQ(c.cosets[0].representative, 0u);
    for (const auto& rec : c.cosets) {
      EXPECT_EQ(rec.representative, coset_min(rec.representative, l));
      EXPECT_EQ(rec.a_count, a_count[rec.representative]);
      EXPECT_EQ(rec.d_count, d_count[rec.representative]);
      EXPECT_EQ(rec.km_image, km_img[rec.representative].size());
      EXPECT_EQ(rec.kp_image, kp_img[rec.representative].size());
    }
    // planted edges are isolated
    const auto g = build_urgraph(*a);
    EXPECT_GE(isolated_edges(g.graph).size(), 2u);
  }
  EXPECT_GE(built, 5);
}

TEST(Census, Preconditions) {
  EXPECT_THROW(coset_census(ElementSet(R3, {1, 2})), PreconditionError);
  EXPECT_THROW(coset_census(ElementSet(GroupRank(2), {0, 1})), PreconditionError);
  // spanning star: no isolated edges
  EXPECT_THROW(coset_census(ElementSet(R4, {0, 1, 2, 4, 8})), PreconditionError);
}
