#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumsat/group.hpp"
#include "sumsat/report.hpp"
#include "sumsat/rng.hpp"
#include "sumsat/search.hpp"
#include "sumsat/urgraph.hpp"

namespace sumsat {

struct FuzzOptions {
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 1;
  int r_min = 1;
  int r_max = 10;
};

// Each driver draws random instances, runs the check and counts
// violations. The verdict is true iff there were none; the first
// violation's witness is kept.
PredicateReport fuzz_kneser(const FuzzOptions& o);
PredicateReport fuzz_s2(const FuzzOptions& o);
// Also runs the sharpness family at every rank in range up to 8.
PredicateReport fuzz_alldisjoint(const FuzzOptions& o);
PredicateReport fuzz_sfnotround(const FuzzOptions& o, int kappa);
// dishalf, matching bound, triangle-freeness, degree-sum edge inequality.
PredicateReport fuzz_round_properties(const FuzzOptions& o);
// linegraph, highfive and matching2 on random graphs.
PredicateReport fuzz_graph_lemmas(const FuzzOptions& o);
// is_round(A) <=> no isolated vertex in the graph, for random A.
PredicateReport fuzz_round_graph(const FuzzOptions& o);

// sfnotround over every enumerated class of sum-free sets at rank r with
// |S| > 2^(r-2) + kappa, for each kappa given.
PredicateReport sfnotround_sweep(GroupRank r, const std::vector<int>& kappas, const SearchOptions& search);

// Samplers shared with the tests.
ElementSet random_set(GroupRank r, Rng& rng, double density);
ElementSet random_sum_free(GroupRank r, Rng& rng);
ElementSet random_round_set(GroupRank r, Rng& rng);
Graph random_graph(std::size_t n, double p, Rng& rng);

// A round set containing 0 with at least two isolated edges in its graph,
// normalized so that the smallest isolated edge starts at 0, and with 2D(A)
// missing a1 and a2 + a3 for the default edge pair. Random walk from a
// coset-structured start; nullopt if it does not settle within steps.
std::optional<ElementSet> generate_census_set(GroupRank r, Rng& rng, int steps = 20000);

}  // namespace sumsat
