#include "sumsat/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "sumsat/canonical.hpp"
#include "sumsat/structure.hpp"
#include "sumsat/sumset.hpp"

namespace sumsat {

namespace {

int draw_rank(const FuzzOptions& o, Rng& rng, int lo = 1, int hi = kMaxRank) {
  const int a = std::max(o.r_min, lo);
  const int b = std::min(o.r_max, hi);
  if (a > b) throw PreconditionError("fuzz: empty rank range");
  return a + static_cast<int>(rng.below(static_cast<std::uint64_t>(b - a + 1)));
}

void require_range(const FuzzOptions& o) {
  if (o.r_min < 1 || o.r_max > kMaxRank || o.r_min > o.r_max) throw RankError("fuzz: bad rank range");
}

Subgroup random_subgroup(GroupRank r, Rng& rng, int dim) {
  std::vector<Element> gens;
  for (int i = 0; i < dim; ++i) gens.push_back(static_cast<Element>(rng.below(r.order())));
  return span(r, gens);
}

// Dense random subset of a random coset of a random subgroup.
ElementSet random_coset_chunk(GroupRank r, Rng& rng, const Subgroup& h) {
  const Element shift = static_cast<Element>(rng.below(r.order()));
  ElementSet out(r);
  const double keep = 0.5 + 0.5 * rng.unit();
  h.members().for_each([&](Element x) {
    if (rng.unit() < keep) out.insert(x ^ shift);
  });
  if (out.empty()) out.insert(shift);
  return out;
}

// Tallies outcomes; the first failing report is kept verbatim.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void add(const PredicateReport& r, const std::string& key = "") {
    ++checks_;
    if (!key.empty()) ++by_key_[key];
    if (!r.verdict) {
      ++violations_;
      if (!first_) first_ = r;
    }
  }

  void count(const std::string& key) { ++by_key_[key]; }

  PredicateReport finish(std::uint64_t iterations, std::uint64_t seed) const {
    PredicateReport out = first_ ? fail(name_, *first_->witness, first_->convention) : pass(name_);
    out.details["iterations"] = iterations;
    out.details["seed"] = seed;
    out.details["checks"] = checks_;
    out.details["violations"] = violations_;
    for (const auto& [k, v] : by_key_) out.details["counts"][k] = v;
    if (first_) out.details["first_violation"] = {{"predicate", first_->predicate}, {"details", first_->details}};
    return out;
  }

 private:
  std::string name_;
  std::uint64_t checks_ = 0;
  std::uint64_t violations_ = 0;
  std::map<std::string, std::uint64_t> by_key_;
  std::optional<PredicateReport> first_;
};

}  // namespace

ElementSet random_set(GroupRank r, Rng& rng, double density) {
  ElementSet out(r);
  for (Element x = 0; x < r.order(); ++x) {
    if (rng.unit() < density) out.insert(x);
  }
  return out;
}

ElementSet random_sum_free(GroupRank r, Rng& rng) {
  if (rng.below(2) == 0) {
    // Random part of a non-zero coset of an index-2 subgroup.
    Element u = 0;
    while (u == 0) u = static_cast<Element>(rng.below(r.order()));
    ElementSet out(r);
    const double keep = 0.3 + 0.7 * rng.unit();
    for (Element x = 0; x < r.order(); ++x) {
      if ((std::popcount(x & u) & 1) && rng.unit() < keep) out.insert(x);
    }
    return out;
  }
  std::vector<Element> pts;
  for (Element x = 1; x < r.order(); ++x) pts.push_back(x);
  for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
  const std::size_t stop = 1 + rng.below(pts.size());
  ElementSet s(r);
  for (Element x : pts) {
    if (s.size() >= stop) break;
    if (sum_free(with(s, x))) s.insert(x);
  }
  return s;
}

ElementSet random_round_set(GroupRank r, Rng& rng) {
  for (;;) {
    ElementSet a(r);
    switch (rng.below(3)) {
      case 0:
        a = random_set(r, rng, rng.unit() * 0.6);
        break;
      case 1:
      case 2: {
        // g + (S u {0}) is round for non-empty sum-free S; a few toggles
        // move off that family.
        ElementSet s = random_sum_free(r, rng);
        s.insert(0);
        a = s.translate(static_cast<Element>(rng.below(r.order())));
        const std::uint64_t toggles = rng.below(3);
        for (std::uint64_t t = 0; t < toggles; ++t) {
          const Element x = static_cast<Element>(rng.below(r.order()));
          a.contains(x) ? a.erase(x) : a.insert(x);
        }
        break;
      }
    }
    if (a.size() >= 2 && round_set(a)) return a;
  }
}

Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.unit() < p) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

Graph without_isolated(const Graph& g, Rng& rng) {
  const std::size_t n = g.vertex_count();
  Graph out(n);
  for (const auto& [i, j] : g.edges()) out.add_edge(i, j);
  for (std::size_t v = 0; v < n; ++v) {
    if (out.degree(v) > 0) continue;
    std::size_t u = rng.below(n - 1);
    if (u >= v) ++u;
    out.add_edge(std::min(u, v), std::max(u, v));
  }
  return out;
}

// A star or two stars on n vertices with a random vertex labelling.
Graph random_two_star(std::size_t n, Rng& rng) {
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);
  Graph g(n);
  auto join = [&](std::size_t a, std::size_t b) {
    const std::size_t x = label[a], y = label[b];
    g.add_edge(std::min(x, y), std::max(x, y));
  };
  if (rng.below(4) == 0) {
    for (std::size_t v = 1; v < n; ++v) join(0, v);
    return g;
  }
  // v1 = 0, v2 = 1; each other vertex goes to V0, V1 or V2. V0 and the
  // edge v1 v2 would close a triangle, so at most one of them is used.
  const bool centers = rng.below(2) == 0;
  bool any1 = false, any2 = false;
  for (std::size_t v = 2; v < n; ++v) {
    const std::uint64_t side = rng.below(centers ? 2 : 3);
    if (side == 0 || side == 2) join(0, v), any1 = true;
    if (side == 1 || side == 2) join(1, v), any2 = true;
  }
  if (centers || !any1 || !any2) join(0, 1);
  return g;
}

}  // namespace

PredicateReport fuzz_kneser(const FuzzOptions& o) {
  require_range(o);
  Rng rng(o.seed);
  Tally tally("kneser-fuzz");
  for (std::uint64_t it = 0; it < o.iterations; ++it) {
    const GroupRank r(draw_rank(o, rng));
    ElementSet b(r), c(r);
    if (rng.below(2) == 0) {
      b = random_set(r, rng, rng.unit());
      c = random_set(r, rng, rng.unit());
    } else {
      const Subgroup h = random_subgroup(r, rng, static_cast<int>(rng.below(r.value() + 1)));
      b = random_coset_chunk(r, rng, h);
      c = random_coset_chunk(r, rng, h);
      if (rng.below(2)) b.insert(static_cast<Element>(rng.below(r.order())));
    }
    if (b.empty()) b.insert(0);
    if (c.empty()) c.insert(static_cast<Element>(rng.below(r.order())));
    const auto rep = kneser_check(b, c);
    tally.add(rep, rep.details["applicable"].get<bool>() ? "applicable" : "vacuous");
  }
  return tally.finish(o.iterations, o.seed);
}

PredicateReport fuzz_s2(const FuzzOptions& o) {
  require_range(o);
  Rng rng(o.seed);
  Tally tally("s2-fuzz");
  for (std::uint64_t it = 0; it < o.iterations; ++it) {
    const GroupRank r(draw_rank(o, rng, 1));
    if (r.order() < 2) continue;
    ElementSet b = random_set(r, rng, 0.2 + 0.8 * rng.unit());
    ElementSet c = random_set(r, rng, 0.2 + 0.8 * rng.unit());
    while (b.size() < 2) b.insert(static_cast<Element>(rng.below(r.order())));
    while (c.size() < 2) c.insert(static_cast<Element>(rng.below(r.order())));
    const auto rep = s2_bound_check(b, c);
    tally.add(rep, rep.details["bound"].get<long long>() > 0 ? "positive-bound" : "trivial-bound");
  }
  return tally.finish(o.iterations, o.seed);
}

PredicateReport fuzz_alldisjoint(const FuzzOptions& o) {
  require_range(o);
  Rng rng(o.seed);
  Tally tally("alldisjoint-fuzz");
  for (int r = std::max(2, o.r_min); r <= std::min(8, o.r_max); ++r) {
    tally.add(alldisjoint_sharpness_check(GroupRank(r)), "sharpness");
  }
  for (std::uint64_t it = 0; it < o.iterations; ++it) {
    const GroupRank r(draw_rank(o, rng));
    const std::size_t n = r.order();
    std::vector<Element> pts(n);
    for (Element x = 0; x < n; ++x) pts[x] = x;
    for (std::size_t i = n; i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
    // |B| + |C| in (n/2, n], both at least 1.
    const std::size_t total = n / 2 + 1 + rng.below(n - n / 2);
    const std::size_t nb = 1 + rng.below(total - 1);
    ElementSet b(r, std::span<const Element>(pts.data(), nb));
    ElementSet c(r, std::span<const Element>(pts.data() + nb, total - nb));
    tally.add(alldisjoint_check(b, c), "random");
  }
  return tally.finish(o.iterations, o.seed);
}

PredicateReport fuzz_sfnotround(const FuzzOptions& o, int kappa) {
  require_range(o);
  Rng rng(o.seed);
  Tally tally("sfnotround-fuzz");
  std::uint64_t drawn = 0;
  for (std::uint64_t it = 0; it < o.iterations; ++it) {
    const GroupRank r(draw_rank(o, rng, 2));
    const ElementSet s = random_sum_free(r, rng);
    ++drawn;
    if (s.size() <= (r.order() >> 2) + static_cast<std::size_t>(kappa)) {
      tally.count("too-small");
      continue;
    }
    tally.add(sfnotround_check(s, kappa), "checked");
  }
  auto out = tally.finish(o.iterations, o.seed);
  out.details["kappa"] = kappa;
  return out;
}

PredicateReport fuzz_round_properties(const FuzzOptions& o) {
  require_range(o);
  Rng rng(o.seed);
  Tally tally("round-properties");
  for (std::uint64_t it = 0; it < o.iterations; ++it) {
    const GroupRank r(draw_rank(o, rng, 2, 12));
    const ElementSet a = random_round_set(r, rng);
    tally.add(dishalf_check(a), "dishalf");
    tally.add(matching_bound_check(a), "matching-bound");
    const std::size_t t = (r.order() >> 2) + 3;
    if (a.size() >= t) tally.add(triangle_free_check(a), "triangle-free");
    if (a.size() > t) tally.add(degree_sum_check(a), "degree-sum");
  }
  return tally.finish(o.iterations, o.seed);
}

PredicateReport fuzz_graph_lemmas(const FuzzOptions& o) {
  Rng rng(o.seed);
  Tally tally("graph-lemmas");
  for (std::uint64_t it = 0; it < o.iterations; ++it) {
    const std::size_t n = 2 + rng.below(29);
    const Graph g = without_isolated(random_graph(n, rng.unit() * 0.5, rng), rng);
    tally.add(linegraph_check(g), "linegraph");
    tally.add(highfive_check(g), "highfive");

    const std::size_t m = 6 + rng.below(10);
    tally.add(matching2_check(random_two_star(m, rng)), "matching2-constructed");
    const Graph h = without_isolated(random_graph(m, rng.unit() * 0.3, rng), rng);
    if (!triangle_witness(h) && matching_number(h).size <= 2) tally.add(matching2_check(h), "matching2-random");
  }
  return tally.finish(o.iterations, o.seed);
}

PredicateReport fuzz_round_graph(const FuzzOptions& o) {
  require_range(o);
  Rng rng(o.seed);
  PredicateReport out = pass("round-graph");
  std::uint64_t violations = 0;
  for (std::uint64_t it = 0; it < o.iterations; ++it) {
    const GroupRank r(draw_rank(o, rng, 1, 12));
    ElementSet a = rng.below(2) ? random_set(r, rng, rng.unit()) : random_round_set(r, rng);
    while (a.size() < 2) a.insert(static_cast<Element>(rng.below(r.order())));
    const bool round = round_set(a);
    const bool no_isolated = !build_urgraph(a).graph.has_isolated_vertex();
    if (round != no_isolated) {
      ++violations;
      if (out.verdict) out = fail("round-graph", {"set", a.elements()});
    }
  }
  out.details["iterations"] = o.iterations;
  out.details["violations"] = violations;
  return out;
}

PredicateReport sfnotround_sweep(GroupRank r, const std::vector<int>& kappas, const SearchOptions& search) {
  if (kappas.empty()) throw PreconditionError("sfnotround_sweep: no kappa given");
  const int kmin = *std::min_element(kappas.begin(), kappas.end());
  SearchOptions o = search;
  o.action = SymmetryAction::Linear;
  o.size_min = (r.order() >> 2) + static_cast<std::size_t>(kmin) + 1;
  o.size_max.reset();
  const SpectrumReport spectrum = enumerate(r, SearchPredicate::SumFree, o);
  Tally tally("sfnotround-sweep");
  for (const auto& e : spectrum.entries) {
    for (const auto& s : e.representatives) {
      for (int k : kappas) {
        if (s.size() > (r.order() >> 2) + static_cast<std::size_t>(k)) {
          tally.add(sfnotround_check(s, k), "kappa=" + std::to_string(k));
        }
      }
    }
  }
  PredicateReport out = tally.finish(spectrum.class_count(), search.seed);
  if (out.verdict && !spectrum.complete) out = fail("sfnotround-sweep", {"incomplete-search", {}});
  out.details["rank"] = r.value();
  out.details["status"] = spectrum.status();
  out.details["classes"] = spectrum.class_count();
  out.details["seconds"] = spectrum.seconds;
  return out;
}

std::optional<ElementSet> generate_census_set(GroupRank r, Rng& rng, int steps) {
  if (r.value() < 4) throw PreconditionError("census generator: needs r >= 4");
  const Element a1 = 1, a2 = 2, a3 = 4;
  const std::array<Element, 5> diffs{2, 4, 3, 5, 7};
  const std::array<Element, 4> km{0, 4, 3, 7}, kp{0, 2, 5, 7};

  ElementSet a(r, {0, a1, a2, a3});
  for (Element c = 8; c < r.order(); c += 8) {
    // coset type by weight: empty 2, one point 3, three pair shapes 2 each, three points 1
    static constexpr std::array<std::uint64_t, 6> weights{2, 3, 2, 2, 2, 1};
    std::uint64_t u = rng.below(12), t = 0;
    while (u >= weights[t]) u -= weights[t++];
    const Element x = c + static_cast<Element>(rng.below(8));
    if (t == 1) {
      a.insert(x);
    } else if (t >= 2 && t <= 4) {
      a.insert(x);
      a.insert(x ^ diffs[rng.below(diffs.size())]);
    } else if (t >= 5) {
      const auto& k = rng.below(2) ? km : kp;
      std::array<Element, 4> s;
      for (std::size_t i = 0; i < 4; ++i) s[i] = x ^ k[i];
      for (std::size_t i = 4; i > 1; --i) std::swap(s[i - 1], s[rng.below(i)]);
      for (std::size_t i = 0; i < (t == 5 ? 3u : 4u); ++i) a.insert(s[i]);
    }
  }

  // 0 when A is round, (0, a1), (a2, a3) are isolated edges and 2D(A)
  // misses a1 and a2 + a3.
  auto score = [&](const ElementSet& s) {
    const UrGraph g = build_urgraph(s);
    const ElementSet dd = doubling(unique_sums(s));
    long long v = 2 * (static_cast<long long>(dd.contains(a1)) + dd.contains(a2 ^ a3));
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      if (g.graph.degree(i) == 0) v += 3;
    }
    for (Element e : {Element{0}, a1, a2, a3}) v += static_cast<long long>(g.graph.degree(g.index_of(e))) - 1;
    if (!g.graph.adjacent(g.index_of(0), g.index_of(a1))) v += 5;
    if (!g.graph.adjacent(g.index_of(a2), g.index_of(a3))) v += 5;
    return v;
  };

  // Metropolis walk at temperature 1.
  long long cur = score(a);
  for (int i = 0; i < steps && cur != 0; ++i) {
    const Element x = 8 + static_cast<Element>(rng.below(r.order() - 8));
    ElementSet b = a;
    b.contains(x) ? b.erase(x) : b.insert(x);
    const long long s = score(b);
    if (s <= cur || rng.unit() < std::exp(static_cast<double>(cur - s))) {
      a = std::move(b);
      cur = s;
    }
  }
  if (cur != 0) return std::nullopt;
  const AffineMap m = random_map(r, rng, true);
  ElementSet out = normalize_for_census(m(a));
  // the default edge pair after normalizing may differ from the planted one
  if (!coset_census(out).sum_premise) return std::nullopt;
  return out;
}

}  // namespace sumsat
