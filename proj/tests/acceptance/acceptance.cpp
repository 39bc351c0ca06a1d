// One PASS/FAIL line per acceptance criterion. Exit status is the number
// of failed criteria (capped at 1 for ctest).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sumsat/fuzz.hpp"
#include "sumsat/search.hpp"
#include "sumsat/structure.hpp"
#include "sumsat/sumset.hpp"
#include "sumsat/threshold.hpp"
#include "sumsat/urgraph.hpp"

using namespace sumsat;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = false;
  std::string note;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = since(t0);
  if (secs > limit_seconds) {
    out.ok = false;
    out.note += " (over time limit " + std::to_string(limit_seconds) + " s)";
  }
  if (!out.ok) ++failures;
  std::printf("%s %2d %s [%.2f s] %s\n", out.ok ? "PASS" : "FAIL", id, title, secs, out.note.c_str());
  std::fflush(stdout);
}

int hw_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

ElementSet from_mask(GroupRank r, std::uint64_t mask) {
  ElementSet a(r);
  for (Element x = 0; x < r.order(); ++x) {
    if (mask >> x & 1u) a.insert(x);
  }
  return a;
}

// Shared plain scan of every subset of the non-zero points at r = 4.
struct Rank4Scan {
  std::vector<ElementSet> minimal;
  std::vector<ElementSet> maximal_sum_free;
  double seconds = 0;
};

const Rank4Scan& rank4_scan() {
  static const Rank4Scan scan = [] {
    Rank4Scan s;
    const auto t0 = Clock::now();
    const GroupRank r(4);
    for (std::uint64_t m = 0; m < (1u << 15); ++m) {
      const ElementSet a = from_mask(r, m << 1);
      if (minimal_saturating(a)) s.minimal.push_back(a);
      if (maximal_sum_free(a)) s.maximal_sum_free.push_back(a);
    }
    s.seconds = since(t0);
    return s;
  }();
  return scan;
}

std::string note(const PredicateReport& rep) { return rep.details.dump(); }

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const Threshold paper = Threshold::parse("paper");

  criterion(1, "r=4 exhaustive classification, both directions", 10, [&] {
    const auto& scan = rank4_scan();
    std::size_t qualifying = 0, bad = 0, caps = 0, bad_caps = 0;
    for (const auto& a : scan.minimal) {
      if (!paper.exceeded_by(a.size(), 4)) continue;
      ++qualifying;
      const auto ds = decompose_saturating(a);
      bool ok = !ds.empty();
      for (const auto& d : ds) ok = ok && d.expand() == a;
      bad += !ok;
    }
    for (const auto& s : scan.maximal_sum_free) {
      for (Element shift : (s | ElementSet(s.rank(), {0})).elements()) {
        ++caps;
        bad_caps += !minimal_saturating(construct_shifted_cap(s, shift));
      }
    }
    std::ostringstream os;
    os << "minimal=" << scan.minimal.size() << " qualifying=" << qualifying << " undecomposable=" << bad
       << " shifted_caps=" << caps << " non_minimal_caps=" << bad_caps;
    return Outcome{qualifying > 0 && bad == 0 && caps > 0 && bad_caps == 0, os.str()};
  });

  criterion(2, "r=4 largest minimal saturating size is 8", 10, [&] {
    const auto& scan = rank4_scan();
    std::size_t largest = 0;
    for (const auto& a : scan.minimal) largest = std::max(largest, a.size());
    return Outcome{largest == 8, "largest=" + std::to_string(largest)};
  });

  criterion(3, "r=5 11-element minimal saturating set, no 11-element maximal sum-free set", 300, [&] {
    const auto a = find_example(GroupRank(5), SearchPredicate::MinimalSaturating, 11, {1, 20000});
    const bool found = a && a->size() == 11 && minimal_saturating(*a);
    SearchOptions o;
    o.size_min = 11;
    o.size_max = 11;
    o.threads = hw_threads();
    const auto spectrum = enumerate(GroupRank(5), SearchPredicate::MaximalSumFree, o);
    std::ostringstream os;
    os << "example=";
    if (a) {
      for (Element x : a->elements()) os << x << ',';
    } else {
      os << "none";
    }
    os << " size11_maximal_sum_free_classes=" << spectrum.class_count() << " status=" << spectrum.status();
    return Outcome{found && spectrum.complete && spectrum.class_count() == 0, os.str()};
  });

  criterion(4, "r=5 maximal sum-free sets above 9 are coset or five-point form", 600, [&] {
    SearchOptions o;
    o.size_min = 10;
    o.threads = hw_threads();
    const auto spectrum = enumerate(GroupRank(5), SearchPredicate::MaximalSumFree, o);
    std::size_t other = 0, mismatched = 0, classes = 0;
    std::ostringstream os;
    for (const auto& e : spectrum.entries) {
      for (const auto& s : e.representatives) {
        ++classes;
        const auto tag = classify_max_sumfree(s).tag;
        other += tag == SumfreeTag::Other;
        const bool expected = (s.size() == 16 && tag == SumfreeTag::IndexTwoCoset) ||
                              (s.size() == 10 && tag == SumfreeTag::FivePointForm);
        mismatched += !expected;
        os << s.size() << ':' << to_string(tag) << ' ';
      }
    }
    os << "classes=" << classes << " status=" << spectrum.status();
    return Outcome{spectrum.complete && classes > 0 && other == 0 && mismatched == 0, os.str()};
  });

  criterion(5, "r=5 classification above 11/36*2^r+3 with audit", 7200, [&] {
    SearchOptions o;
    o.audit = true;
    o.audit_samples = 1000;
    o.threads = hw_threads();
    const auto rep = verify_classification(GroupRank(5), paper, o);
    const auto& d = rep.details;
    const bool complete = d.value("status", "") == "COMPLETE";
    const bool audit_ok = d.contains("audit") && d["audit"].is_object() && d["audit"]["failures"] == 0 &&
                          d["audit"]["sampled"].get<std::size_t>() ==
                              std::min<std::size_t>(1000, d["audit"]["pruned_seen"].get<std::size_t>());
    std::ostringstream os;
    os << "verdict=" << rep.verdict << " status=" << d.value("status", "?") << " sizes=" << d["sizes_from"] << ".."
       << d["sizes_to"] << " classes=" << d["classes_checked"] << " audit=" << d["audit"].dump();
    return Outcome{rep.verdict && complete && audit_ok, os.str()};
  });

  criterion(6, "round-set property suite, 10^4 per rank 3..8", 120, [&] {
    std::ostringstream os;
    bool ok = true;
    for (int r = 3; r <= 8; ++r) {
      FuzzOptions o;
      o.iterations = 10000;
      o.seed = 2024 + static_cast<std::uint64_t>(r);
      o.r_min = o.r_max = r;
      const auto rep = fuzz_round_properties(o);
      ok = ok && rep.verdict;
      os << "r" << r << ':' << rep.details["violations"] << ' ';
      if (!rep.verdict) os << note(rep) << ' ';
    }
    return Outcome{ok, os.str()};
  });

  criterion(7, "oracle fuzz: Kneser, S2, alldisjoint, sfnotround sweep", 300, [&] {
    std::ostringstream os;
    bool ok = true;
    auto run = [&](const char* name, const PredicateReport& rep) {
      ok = ok && rep.verdict;
      os << name << ':' << rep.details.value("violations", -1) << ' ';
      if (!rep.verdict) os << note(rep) << ' ';
    };
    FuzzOptions k;
    k.iterations = 100000;
    k.seed = 7;
    k.r_max = 10;
    run("kneser", fuzz_kneser(k));
    FuzzOptions s = k;
    s.iterations = 10000;
    s.r_max = 8;
    run("s2", fuzz_s2(s));
    run("alldisjoint", fuzz_alldisjoint(s));
    SearchOptions search;
    search.threads = hw_threads();
    for (int r : {5, 6}) {
      const auto rep = sfnotround_sweep(GroupRank(r), {2, 3}, search);
      ok = ok && rep.verdict && rep.details["status"] == "COMPLETE";
      os << "sweep-r" << r << ':' << rep.details["classes"] << " classes " << rep.details.value("violations", -1)
         << " violations ";
    }
    return Outcome{ok, os.str()};
  });

  criterion(8, "round <=> no isolated vertex, decompose_round <=> star centers, r<=4", 60, [&] {
    std::size_t sets = 0, bad_round = 0, bad_star = 0;
    for (int rv = 1; rv <= 4; ++rv) {
      const GroupRank r(rv);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << r.order()); ++m) {
        const ElementSet a = from_mask(r, m);
        if (a.size() < 2) continue;
        ++sets;
        const UrGraph g = build_urgraph(a);
        bad_round += round_set(a) != !g.graph.has_isolated_vertex();
        ElementSet shifts(r);
        for (const auto& d : decompose_round(a)) shifts.insert(d.shift);
        bad_star += shifts != spanning_star_centers(g);
      }
    }
    std::ostringstream os;
    os << "sets=" << sets << " round_mismatch=" << bad_round << " star_mismatch=" << bad_star;
    return Outcome{bad_round == 0 && bad_star == 0, os.str()};
  });

  criterion(9, "coset census identities on 100 generated sets, r=6,7", 60, [&] {
    Rng rng(99);
    std::size_t made = 0, bad = 0, attempts = 0, premised = 0;
    std::string first;
    for (int r : {6, 7}) {
      std::size_t here = 0;
      while (here < 50 && attempts < 5000) {
        ++attempts;
        const auto a = generate_census_set(GroupRank(r), rng);
        if (!a) continue;
        ++here;
        const CosetCensus c = coset_census(*a);
        premised += c.sum_premise;
        if (!c.sum_premise || !c.violations.empty() || !c.coset_sum_identity || !c.weighted_sum_identity) {
          ++bad;
          if (first.empty()) first = !c.violations.empty() ? c.violations.front() : !c.sum_premise ? "premise" : "identity";
        }
      }
      made += here;
    }
    std::ostringstream os;
    os << "sets=" << made << " attempts=" << attempts << " with_2D_premise=" << premised << " violating=" << bad << (first.empty() ? "" : " first=" + first);
    return Outcome{made == 100 && bad == 0, os.str()};
  });

  criterion(10, "performance at r=20 (2x slack)", 120, [&] {
    const GroupRank r(20);
    Rng rng(10);
    const ElementSet dense = random_set(r, rng, 0.5);
    ElementSet sparse(r);
    while (sparse.size() < 1000) sparse.insert(static_cast<Element>(rng.below(r.order())));
    auto median_of = [](int runs, const std::function<void()>& f) {
      std::vector<double> t;
      for (int i = 0; i < runs; ++i) {
        const auto t0 = Clock::now();
        f();
        t.push_back(since(t0));
      }
      std::sort(t.begin(), t.end());
      return t[t.size() / 2];
    };
    std::uint64_t sink = 0;
    const double td = median_of(3, [&] { sink += rep_counts(dense, Kernel::Dense).total(); });
    const double ts = median_of(5, [&] { sink += sumset(sparse, sparse, Kernel::Sparse).size(); });
    std::ostringstream os;
    os << "dense_rep_counts=" << td << "s (limit 2) sparse_sumset=" << ts * 1000 << "ms (limit 100)";
    return Outcome{sink > 0 && td <= 2.0 && ts <= 0.1, os.str()};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
