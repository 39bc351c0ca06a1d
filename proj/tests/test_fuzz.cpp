#include <gtest/gtest.h>

#include "sumsat/fuzz.hpp"
#include "sumsat/structure.hpp"
#include "sumsat/sumset.hpp"
#include "sumsat/urgraph.hpp"

using namespace sumsat;

TEST(Fuzz, DriversReportNoViolations) {
  FuzzOptions o;
  o.iterations = 3000;
  o.seed = 61;
  o.r_max = 8;
  for (const auto& rep : {fuzz_kneser(o), fuzz_s2(o), fuzz_alldisjoint(o), fuzz_sfnotround(o, 2),
                          fuzz_sfnotround(o, 3), fuzz_graph_lemmas(o), fuzz_round_graph(o)}) {
    EXPECT_TRUE(rep.verdict) << rep.predicate << " " << rep.details.dump();
    EXPECT_EQ(rep.details["violations"], 0);
    EXPECT_EQ(rep.details["iterations"], 3000);
  }
  o.r_min = 3;
  o.iterations = 500;
  EXPECT_TRUE(fuzz_round_properties(o).verdict);
}

TEST(Fuzz, SameSeedSameReport) {
  FuzzOptions o;
  o.iterations = 500;
  o.seed = 62;
  EXPECT_EQ(fuzz_kneser(o).details, fuzz_kneser(o).details);
  o.seed = 63;
  EXPECT_EQ(fuzz_round_properties(o).details.dump(), fuzz_round_properties(o).details.dump());
}

TEST(Fuzz, SamplersHonourTheirContracts) {
  Rng rng(64);
  for (int i = 0; i < 300; ++i) {
    const GroupRank r(2 + static_cast<int>(rng.below(7)));
    EXPECT_TRUE(sum_free(random_sum_free(r, rng)));
    const ElementSet a = random_round_set(r, rng);
    EXPECT_GE(a.size(), 2u);
    EXPECT_TRUE(round_set(a));
  }
}

TEST(Fuzz, CensusGeneratorMeetsPreconditions) {
  Rng rng(65);
  int made = 0;
  for (int i = 0; i < 60; ++i) {
    const GroupRank r(6 + i % 2);
    const auto a = generate_census_set(r, rng);
    if (!a) continue;
    ++made;
    EXPECT_TRUE(a->contains(0));
    EXPECT_TRUE(round_set(*a));
    const auto g = build_urgraph(*a);
    const auto iso = isolated_edges(g.graph);
    ASSERT_GE(iso.size(), 2u);
    EXPECT_EQ(g.vertices[iso.front().first], 0u);
    EXPECT_TRUE(coset_census(*a).violations.empty());
  }
  EXPECT_GE(made, 10);
}

TEST(Fuzz, SfnotroundSweepRank5) {
  SearchOptions s;
  s.threads = 2;
  const auto rep = sfnotround_sweep(GroupRank(5), {2, 3}, s);
  EXPECT_TRUE(rep.verdict) << rep.details.dump();
}
