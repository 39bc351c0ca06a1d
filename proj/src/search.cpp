#include "sumsat/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>

#include <omp.h>

#include "sumsat/structure.hpp"
#include "sumsat/sumset.hpp"

namespace sumsat {

const char* to_string(SearchPredicate p) {
  switch (p) {
    case SearchPredicate::MinimalSaturating: return "minimal-saturating";
    case SearchPredicate::MaximalSumFree: return "maximal-sum-free";
    case SearchPredicate::SumFree: return "sum-free";
    case SearchPredicate::Round: return "round";
  }
  return "?";
}

SearchPredicate parse_search_predicate(const std::string& s) {
  for (auto p : {SearchPredicate::MinimalSaturating, SearchPredicate::MaximalSumFree, SearchPredicate::SumFree,
                 SearchPredicate::Round}) {
    if (s == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown search predicate '" + s + "'");
}

const char* to_string(PruneReason p) {
  switch (p) {
    case PruneReason::SizeCap: return "size-cap";
    case PruneReason::Redundant: return "redundant-element";
    case PruneReason::SchurTriple: return "schur-triple";
    case PruneReason::ShortOfSize: return "short-of-size";
  }
  return "?";
}

bool satisfies(SearchPredicate p, const ElementSet& a) {
  switch (p) {
    case SearchPredicate::MinimalSaturating: return !a.contains(0) && minimal_saturating(a);
    case SearchPredicate::MaximalSumFree: return maximal_sum_free(a);
    case SearchPredicate::SumFree: return sum_free(a);
    case SearchPredicate::Round: return round_set(a);
  }
  return false;
}

std::size_t SpectrumReport::class_count() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.count;
  return n;
}

const SpectrumEntry* SpectrumReport::at_size(std::size_t size) const {
  for (const auto& e : entries) {
    if (e.size == size) return &e;
  }
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Problem {
  GroupRank r;
  SearchPredicate p;
  SearchOptions o;
  std::size_t size_max;
  ElementSet universe;
};

ElementSet available(const ElementSet& q) {
  ElementSet avail = ElementSet::nonzero(q.rank());
  avail -= q;
  avail -= doubling(q);
  return avail;
}

// Each rule is closed upwards: once it fires for Q it fires for every
// superset within the universe, so no qualifying set lies above Q.
std::optional<PruneReason> prune(const Problem& pb, const ElementSet& q) {
  if (q.size() > pb.size_max) return PruneReason::SizeCap;
  switch (pb.p) {
    case SearchPredicate::MinimalSaturating: {
      bool redundant = false;
      q.for_each([&](Element a) { redundant = redundant || saturating(without(q, a)); });
      if (redundant) return PruneReason::Redundant;
      break;
    }
    case SearchPredicate::SumFree:
    case SearchPredicate::MaximalSumFree:
      if (!sum_free(q)) return PruneReason::SchurTriple;
      if (q.size() + available(q).size() < pb.o.size_min) return PruneReason::ShortOfSize;
      break;
    case SearchPredicate::Round:
      break;
  }
  return std::nullopt;
}

bool expandable(const Problem& pb, const ElementSet& p) {
  if (p.size() >= pb.size_max) return false;
  if (pb.p == SearchPredicate::MinimalSaturating && !p.empty() && saturating(p)) return false;
  return true;
}

ElementSet canon(const Problem& pb, const ElementSet& q) {
  return canonical_form(q, pb.o.action, true).set;
}

std::uint64_t set_key(const ElementSet& q, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (auto w : q.words()) {
    h ^= w;
    h = splitmix64(h);
  }
  return h;
}

struct Sample {
  std::uint64_t key;
  ElementSet node;
  PruneReason reason;
};

// Keeps the k pruned nodes with the smallest keys; the choice depends only
// on the set of pruned nodes, not on thread scheduling.
class BottomK {
 public:
  explicit BottomK(std::size_t k) : k_(k) {}

  void offer(Sample s) {
    if (k_ == 0) return;
    items_.push_back(std::move(s));
    if (items_.size() >= 4 * k_) shrink();
  }

  void merge(BottomK&& o) {
    for (auto& s : o.items_) items_.push_back(std::move(s));
    shrink();
  }

  std::vector<Sample> take() {
    shrink();
    return std::move(items_);
  }

 private:
  void shrink() {
    std::sort(items_.begin(), items_.end(), [](const Sample& a, const Sample& b) {
      return a.key != b.key ? a.key < b.key : a.node < b.node;
    });
    items_.erase(std::unique(items_.begin(), items_.end(),
                             [](const Sample& a, const Sample& b) { return a.node == b.node; }),
                 items_.end());
    if (items_.size() > k_) items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(k_), items_.end());
  }

  std::size_t k_;
  std::vector<Sample> items_;
};

// Plain double-loop oracles for the audit, sharing no code with sumset_calc.
std::vector<char> oracle_cover(const ElementSet& x) {
  std::vector<Element> pts = x.elements();
  pts.push_back(0);
  std::vector<char> cov(x.universe(), 0);
  for (Element a : pts) {
    for (Element b : pts) cov[a ^ b] = 1;
  }
  return cov;
}

bool oracle_saturating(const ElementSet& x) {
  const auto cov = oracle_cover(x);
  return std::all_of(cov.begin(), cov.end(), [](char c) { return c != 0; });
}

bool oracle_minimal_saturating(const ElementSet& x) {
  if (!oracle_saturating(x)) return false;
  for (Element a : x.elements()) {
    if (oracle_saturating(without(x, a))) return false;
  }
  return true;
}

bool oracle_sum_free(const ElementSet& x) {
  const auto pts = x.elements();
  for (Element a : pts) {
    for (Element b : pts) {
      if (x.contains(a ^ b)) return false;
    }
  }
  return true;
}

std::vector<Element> oracle_available(const ElementSet& x) {
  const auto pts = x.elements();
  std::vector<char> sums(x.universe(), 0);
  for (Element a : pts) {
    for (Element b : pts) sums[a ^ b] = 1;
  }
  std::vector<Element> out;
  for (Element g = 1; g < x.universe(); ++g) {
    if (!x.contains(g) && !sums[g]) out.push_back(g);
  }
  return out;
}

ElementSet random_superset(const Problem& pb, const ElementSet& q, Rng& rng) {
  std::vector<Element> free;
  (pb.universe - q).for_each([&](Element x) { free.push_back(x); });
  ElementSet y = q;
  if (free.empty()) return y;
  const std::size_t add = 1 + rng.below(std::min<std::size_t>(free.size(), 4));
  for (std::size_t i = 0; i < add; ++i) {
    const std::size_t j = i + rng.below(free.size() - i);
    std::swap(free[i], free[j]);
    y.insert(free[i]);
  }
  return y;
}

void audit_one(const Problem& pb, const Sample& s, Rng& rng, AuditReport& out) {
  const ElementSet& q = s.node;
  auto failure = [&](std::string why) { out.failures.push_back({q, s.reason, std::move(why)}); };
  constexpr int kSupersets = 4;
  switch (s.reason) {
    case PruneReason::SizeCap:
      if (q.size() <= pb.size_max) failure("size within range");
      break;
    case PruneReason::Redundant: {
      bool removable = false;
      for (Element a : q.elements()) removable = removable || oracle_saturating(without(q, a));
      if (!removable) failure("no element is removable");
      for (int t = 0; t < kSupersets; ++t) {
        ++out.supersets_checked;
        if (oracle_minimal_saturating(random_superset(pb, q, rng))) failure("minimal saturating superset");
      }
      break;
    }
    case PruneReason::SchurTriple:
      if (oracle_sum_free(q)) failure("node is sum-free");
      for (int t = 0; t < kSupersets; ++t) {
        ++out.supersets_checked;
        if (oracle_sum_free(random_superset(pb, q, rng))) failure("sum-free superset");
      }
      break;
    case PruneReason::ShortOfSize: {
      if (!oracle_sum_free(q) || q.size() + oracle_available(q).size() >= pb.o.size_min) {
        failure("size bound does not hold");
      }
      for (int t = 0; t < kSupersets; ++t) {
        ++out.supersets_checked;
        ElementSet y = q;
        for (;;) {
          const auto avail = oracle_available(y);
          if (avail.empty()) break;
          y.insert(avail[rng.below(avail.size())]);
        }
        if (y.size() >= pb.o.size_min) failure("maximal sum-free extension reaches size_min");
      }
      break;
    }
  }
}

}  // namespace

SpectrumReport enumerate(GroupRank r, SearchPredicate p, const SearchOptions& options) {
  if (r.value() < 1) throw RankError("enumerate: r must be at least 1");
  if (options.action != SymmetryAction::None && r.value() > kCanonicalMaxRank) {
    throw RankError("enumerate: canonical forms need r <= " + std::to_string(kCanonicalMaxRank));
  }
  if (r.value() >= 5 && options.size_min == 0 && !options.size_max && !options.budget.nodes &&
      !options.budget.seconds) {
    throw PreconditionError("enumerate: r >= 5 needs a size range or a budget");
  }
  ElementSet universe = p == SearchPredicate::Round ? ElementSet::full(r) : ElementSet::nonzero(r);
  std::size_t size_max = options.size_max.value_or(universe.size());
  if (p == SearchPredicate::MinimalSaturating) size_max = std::min(size_max, r.order() / 2);
  const Problem pb{r, p, options, size_max, universe};

  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  SpectrumReport report;
  report.rank = r;
  report.predicate = to_string(p);
  report.action = options.action;
  report.size_min = options.size_min;
  report.size_max = size_max;
  report.complete = true;

  std::vector<std::vector<ElementSet>> found(size_max + 1);
  auto record = [&](const ElementSet& s) {
    if (s.size() >= options.size_min && s.size() <= size_max && satisfies(p, s)) found[s.size()].push_back(s);
  };

  std::vector<ElementSet> level{ElementSet(r)};
  record(level.front());
  std::atomic<std::uint64_t> nodes{1};
  std::atomic<std::uint64_t> pruned{0};
  std::atomic<bool> stop{false};
  BottomK sample(options.audit ? options.audit_samples : 0);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

  auto over_budget = [&] {
    if (options.budget.nodes && nodes.load() > *options.budget.nodes) return true;
    if (options.budget.seconds && elapsed() > *options.budget.seconds) return true;
    return false;
  };

  while (!level.empty() && !stop) {
    std::vector<std::vector<ElementSet>> kids(level.size());
#pragma omp parallel num_threads(threads)
    {
      BottomK local(options.audit ? options.audit_samples : 0);
#pragma omp for schedule(dynamic, 1)
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (stop.load(std::memory_order_relaxed)) continue;
        const ElementSet& parent = level[i];
        if (!expandable(pb, parent)) continue;
        std::vector<ElementSet> children;
        (universe - parent).for_each([&](Element x) {
          ElementSet q = with(parent, x);
          if (auto why = prune(pb, q)) {
            pruned.fetch_add(1, std::memory_order_relaxed);
            if (options.audit) local.offer({set_key(q, options.seed), std::move(q), *why});
            return;
          }
          children.push_back(canon(pb, q));
        });
        std::sort(children.begin(), children.end());
        children.erase(std::unique(children.begin(), children.end()), children.end());
        for (auto& c : children) {
          if (canon(pb, without(c, c.max())) == parent) kids[i].push_back(std::move(c));
        }
        nodes.fetch_add(kids[i].size(), std::memory_order_relaxed);
        if (over_budget()) stop = true;
      }
#pragma omp critical
      sample.merge(std::move(local));
    }
    if (stop) report.complete = false;

    std::vector<ElementSet> next;
    for (auto& k : kids) {
      for (auto& c : k) next.push_back(std::move(c));
    }
    std::sort(next.begin(), next.end());
    if (std::adjacent_find(next.begin(), next.end()) != next.end()) {
      throw std::logic_error("enumerate: a class was generated twice");
    }
    for (const auto& c : next) record(c);
    level = std::move(next);
  }

  for (std::size_t k = 0; k <= size_max; ++k) {
    if (found[k].empty()) continue;
    std::sort(found[k].begin(), found[k].end());
    report.entries.push_back({k, found[k].size(), std::move(found[k])});
  }
  report.nodes = nodes.load();
  report.pruned = pruned.load();

  if (options.audit) {
    AuditReport audit;
    audit.pruned_seen = report.pruned;
    Rng rng(options.seed ^ 0xA0D17ull);
    for (const auto& s : sample.take()) {
      ++audit.sampled;
      audit_one(pb, s, rng, audit);
    }
    report.audit = std::move(audit);
  }
  report.seconds = elapsed();
  return report;
}

PredicateReport verify_classification(GroupRank r, const Threshold& threshold, const SearchOptions& options) {
  if (r.value() > 5) throw PreconditionError("verify_classification: r <= 5");
  SearchOptions o = options;
  o.action = SymmetryAction::Linear;
  o.size_min = threshold.first_size_above(r.value());
  const SpectrumReport spectrum = enumerate(r, SearchPredicate::MinimalSaturating, o);

  std::optional<Witness> witness;
  std::size_t checked = 0;
  std::size_t decompositions = 0;
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& e : spectrum.entries) {
    sizes.push_back({{"size", e.size}, {"classes", e.count}});
    for (const auto& a : e.representatives) {
      ++checked;
      const auto decs = decompose_saturating(a);
      decompositions += decs.size();
      if (decs.empty() && !witness) witness = Witness{"undecomposable-set", a.elements()};
      for (const auto& d : decs) {
        if (!(d.expand() == a) && !witness) witness = Witness{"roundtrip-mismatch", a.elements()};
      }
    }
  }
  if (!witness && spectrum.audit && !spectrum.audit->failures.empty()) {
    witness = Witness{"audit-failure", spectrum.audit->failures.front().node.elements()};
  }
  if (!witness && !spectrum.complete) witness = Witness{"incomplete-search", {}};

  PredicateReport report = witness ? fail("classification", *witness) : pass("classification");
  report.details["threshold"] = threshold.expression();
  report.details["threshold_value"] = to_string(threshold.value(r.value()));
  report.details["sizes_from"] = o.size_min;
  report.details["sizes_to"] = spectrum.size_max;
  report.details["status"] = spectrum.status();
  report.details["classes_checked"] = checked;
  report.details["decompositions"] = decompositions;
  report.details["spectrum"] = sizes;
  report.details["nodes"] = spectrum.nodes;
  report.details["pruned"] = spectrum.pruned;
  report.details["seconds"] = spectrum.seconds;
  if (spectrum.audit) {
    report.details["audit"] = {{"pruned_seen", spectrum.audit->pruned_seen},
                               {"sampled", spectrum.audit->sampled},
                               {"supersets_checked", spectrum.audit->supersets_checked},
                               {"failures", spectrum.audit->failures.size()}};
  }
  return report;
}

PredicateReport second_largest_check(GroupRank r, const SearchOptions& options) {
  if (r.value() < 4 || r.value() > 5) throw PreconditionError("second_largest_check: 4 <= r <= 5");
  SearchOptions o = options;
  o.action = SymmetryAction::Linear;
  o.size_min = 0;
  o.size_max = r.order() / 2;
  const SpectrumReport spectrum = enumerate(r, SearchPredicate::MinimalSaturating, o);

  const std::size_t expected_top = r.order() / 2;
  const std::size_t expected_second = 5 * (r.order() / 16);
  std::vector<std::size_t> sizes;
  for (const auto& e : spectrum.entries) sizes.push_back(e.size);
  std::sort(sizes.rbegin(), sizes.rend());

  const ElementSet coset = construct_coset(r, r.mask() & ~(r.mask() >> 1), r.mask() & ~(r.mask() >> 1));
  const ElementSet five = construct_five_point(r);
  nlohmann::json family = nlohmann::json::array();
  for (const auto* s : {&coset, &five}) {
    family.push_back({{"size", s->size()}, {"minimal_saturating", minimal_saturating(*s)}});
  }

  const bool holds = spectrum.complete && sizes.size() >= 2 && sizes[0] == expected_top && sizes[1] == expected_second;
  PredicateReport report = pass("second-largest-size");
  if (!holds) {
    std::vector<Element> example;
    if (sizes.size() >= 2) example = spectrum.at_size(sizes[1])->representatives.front().elements();
    report = fail("second-largest-size", {spectrum.complete ? "second-largest-size" : "incomplete-search", example});
  }
  report.details["surrogate"] = true;
  report.details["asserted"] = false;
  report.details["status"] = spectrum.status();
  report.details["sizes_descending"] = sizes;
  report.details["expected_top"] = expected_top;
  report.details["expected_second"] = expected_second;
  report.details["family"] = family;
  return report;
}

namespace {

ElementSet cover(const ElementSet& p) { return doubling(with(p, 0)); }

bool irredundant(const ElementSet& p) {
  const std::size_t full = cover(p).size();
  bool ok = true;
  p.for_each([&](Element a) { ok = ok && cover(without(p, a)).size() < full; });
  return ok;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// Grows an irredundant set until it saturates; saturating plus irredundant
// is minimal. Candidates that cover few new points are preferred half the
// time, which pushes towards larger sets. Stuck states drop an element.
std::optional<ElementSet> grow_minimal_saturating(GroupRank r, std::size_t target, Rng& rng) {
  ElementSet p(r);
  const std::size_t order = r.order();
  for (int step = 0; step < 200; ++step) {
    if (cover(p).size() == order) {
      if (p.size() == target) return p;
      // Wrong size: restart from a random half.
      auto el = p.elements();
      shuffle(el, rng);
      p = ElementSet(r, std::span<const Element>(el.data(), el.size() / 2));
      continue;
    }
    const std::size_t covered = cover(p).size();
    std::vector<std::pair<std::size_t, Element>> options;
    for (Element x = 1; x < order; ++x) {
      if (p.contains(x)) continue;
      const ElementSet q = with(p, x);
      if (irredundant(q)) options.push_back({cover(q).size() - covered, x});
    }
    if (options.empty() || p.size() >= target) {
      if (p.empty()) return std::nullopt;
      auto el = p.elements();
      p.erase(el[rng.below(el.size())]);
      continue;
    }
    Element pick;
    if (rng.below(2) == 0) {
      const auto lo = std::min_element(options.begin(), options.end())->first;
      std::vector<Element> best;
      for (const auto& [gain, x] : options) {
        if (gain == lo) best.push_back(x);
      }
      pick = best[rng.below(best.size())];
    } else {
      pick = options[rng.below(options.size())].second;
    }
    p.insert(pick);
  }
  return std::nullopt;
}

std::optional<ElementSet> grow_sum_free(GroupRank r, std::size_t target, bool maximal, Rng& rng) {
  std::vector<Element> pts;
  for (Element x = 1; x < r.order(); ++x) pts.push_back(x);
  shuffle(pts, rng);
  ElementSet s(r);
  for (Element x : pts) {
    if (!maximal && s.size() == target) break;
    if (sum_free(with(s, x))) s.insert(x);
  }
  if (s.size() == target) return s;
  return std::nullopt;
}

std::optional<ElementSet> random_round(GroupRank r, std::size_t target, Rng& rng) {
  if (target > r.order()) return std::nullopt;
  std::vector<Element> pts(r.order());
  for (Element x = 0; x < r.order(); ++x) pts[x] = x;
  shuffle(pts, rng);
  return ElementSet(r, std::span<const Element>(pts.data(), target));
}

}  // namespace

std::optional<ElementSet> find_example(GroupRank r, SearchPredicate p, std::size_t target_size,
                                       const FindOptions& options) {
  if (r.value() < 1) throw RankError("find_example: r must be at least 1");
  Rng rng(options.seed);
  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    std::optional<ElementSet> cand;
    switch (p) {
      case SearchPredicate::MinimalSaturating: cand = grow_minimal_saturating(r, target_size, rng); break;
      case SearchPredicate::MaximalSumFree: cand = grow_sum_free(r, target_size, true, rng); break;
      case SearchPredicate::SumFree: cand = grow_sum_free(r, target_size, false, rng); break;
      case SearchPredicate::Round: cand = random_round(r, target_size, rng); break;
    }
    if (cand && cand->size() == target_size && satisfies(p, *cand)) return cand;
  }
  return std::nullopt;
}

}  // namespace sumsat
