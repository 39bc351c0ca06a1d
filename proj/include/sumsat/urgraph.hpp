#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sumsat/group.hpp"
#include "sumsat/report.hpp"

namespace sumsat {

// Simple undirected graph on vertices 0..n-1 with bit-row adjacency.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit Graph(std::size_t n);

  void add_edge(std::size_t i, std::size_t j);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool adjacent(std::size_t i, std::size_t j) const {
    return (rows_[i][j >> 6] >> (j & 63)) & 1u;
  }
  std::size_t degree(std::size_t i) const { return degree_[i]; }
  std::vector<std::size_t> neighbors(std::size_t i) const;
  // Edges as (i, j) with i < j, in insertion order.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const std::uint64_t> row(std::size_t i) const { return rows_[i]; }

  bool has_isolated_vertex() const;

 private:
  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> degree_;
  std::vector<Edge> edges_;
};

// Unique-representation graph: vertices are the elements of A in ascending
// order; a1 ~ a2 iff a1 + a2 is in D(A). labels[k] = a1 + a2 for edges()[k].
struct UrGraph {
  GroupRank rank;
  std::vector<Element> vertices;
  Graph graph;
  std::vector<Element> labels;

  std::size_t index_of(Element a) const;
};

UrGraph build_urgraph(const ElementSet& a);

std::vector<Graph::Edge> isolated_edges(const Graph& g);

using Triangle = std::array<std::size_t, 3>;
std::optional<Triangle> triangle_witness(const Graph& g);

struct MatchingResult {
  std::size_t size = 0;
  std::vector<Graph::Edge> edges;
};

// Maximum matching by augmenting paths with blossom contraction.
MatchingResult matching_number(const Graph& g);

// Vertices adjacent to every other vertex; needs at least two vertices.
ElementSet spanning_star_centers(const UrGraph& g);

// deg(a1) + deg(a2) >= |A| + |D(A)| - 2^(r-1) on every edge, for
// |A| > 2^(r-2) + 3.
PredicateReport degree_sum_check(const ElementSet& a);

// |A| >= 2^(r-2)+3: no triangle; |A| > 2^(r-2)+3: D(A) sum-free.
PredicateReport triangle_free_check(const ElementSet& a);

// Round A: 2|D(A)| >= |A|.
PredicateReport dishalf_check(const ElementSet& a);

// Round A: |A| <= |D(A)| + t.
PredicateReport matching_bound_check(const ElementSet& a);

// Every edge has degree sum >= delta and no vertex is isolated, so
// delta |E| >= (delta - 1) |V|. delta defaults to the minimum edge degree sum.
PredicateReport linegraph_check(const Graph& g, std::optional<std::size_t> delta = std::nullopt);

// No isolated vertices: |V| <= |E| + t.
PredicateReport highfive_check(const Graph& g);

// V = {v1, v2} u V0 u V1 u V2 with v1 joined to V0 u V1 and v2 to V0 u V2,
// plus possibly v1 v2. A star comes out with v2 one of its leaves.
struct TwoStarPartition {
  std::size_t v1 = 0;
  std::size_t v2 = 0;
  std::vector<std::size_t> v0_set, v1_set, v2_set;
  bool centers_adjacent = false;
};

// Recovers the partition from a vertex cover of size <= 2, if one exists
// and the edge set matches it exactly.
std::optional<TwoStarPartition> two_star_partition(const Graph& g);

// Triangle-free, no isolated vertices, matching number <= 2, |V| >= 6:
// the graph is a star or two stars.
PredicateReport matching2_check(const Graph& g);

}  // namespace sumsat
