#include "sumsat/structure.hpp"

#include <algorithm>
#include <bit>

#include "sumsat/sumset.hpp"

namespace sumsat {

namespace {

bool parity(Element x) { return std::popcount(x) & 1; }

Subgroup hyperplane(GroupRank r, Element functional) {
  if (functional == 0 || !r.contains(functional)) {
    throw PreconditionError("functional must be a non-zero element of the group");
  }
  std::vector<Element> members;
  for (Element x = 0; x < r.order(); ++x) {
    if (!parity(x & functional)) members.push_back(x);
  }
  return span(r, members);
}

void require_point_set(const ElementSet& b, const char* op) {
  if (b.contains(0)) throw PreconditionError(std::string(op) + ": 0 is not a projective point");
}

template <class F>
void for_each_line(GroupRank r, F&& f) {
  const Element n = static_cast<Element>(r.order());
  for (Element x = 1; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      const Element z = x ^ y;
      if (z > y) f(x, y, z);
    }
  }
}

}  // namespace

ElementSet Decomposition::expand() const {
  ElementSet a = with(base, 0).translate(shift);
  if (kind == DecompositionKind::SaturatingForm) a.erase(0);
  return a;
}

std::vector<Decomposition> decompose_saturating(const ElementSet& a) {
  if (a.contains(0)) throw PreconditionError("decompose_saturating: 0 must not belong to A");
  const ElementSet a0 = with(a, 0);
  std::vector<Decomposition> out;
  a0.for_each([&](Element s) {
    ElementSet base = a0.translate(s);
    base.erase(0);
    if (maximal_sum_free(base)) out.push_back({s, std::move(base), DecompositionKind::SaturatingForm});
  });
  return out;
}

std::vector<Decomposition> decompose_round(const ElementSet& a) {
  if (a.size() < 2) throw PreconditionError("decompose_round: needs |A| >= 2");
  std::vector<Decomposition> out;
  a.for_each([&](Element g) {
    ElementSet base = a.translate(g);
    base.erase(0);
    if (sum_free(base)) out.push_back({g, std::move(base), DecompositionKind::RoundForm});
  });
  return out;
}

const char* to_string(SumfreeTag tag) {
  switch (tag) {
    case SumfreeTag::IndexTwoCoset: return "index-two-coset";
    case SumfreeTag::FivePointForm: return "five-point-form";
    case SumfreeTag::Other: return "other";
  }
  return "?";
}

SumfreeClass classify_max_sumfree(const ElementSet& s) {
  if (!maximal_sum_free(s)) throw PreconditionError("classify_max_sumfree: S must be maximal sum-free");
  const GroupRank r = s.rank();
  SumfreeClass result;
  if (s.empty()) return result;

  const ElementSet shifted = s.translate(s.min());
  if (shifted.size() * 2 == s.universe()) {
    Subgroup h = span(shifted);
    if (h.members() == shifted) {
      result.tag = SumfreeTag::IndexTwoCoset;
      result.coset_subgroup = std::move(h);
      return result;
    }
  }

  if (r.value() >= 4) {
    Subgroup h = period(s);
    if (h.index() == 16) {
      const ElementSet q = quotient_project(s, h);
      const auto points = q.elements();
      Element total = 0;
      for (Element p : points) total ^= p;
      if (points.size() == 5 && span(q).dim() == 4 && total == 0) {
        result.tag = SumfreeTag::FivePointForm;
        result.period_subgroup = std::move(h);
        result.quotient_points = points;
      }
    }
  }
  return result;
}

PredicateReport large_sumfree_form_check(const ElementSet& s) {
  const SumfreeClass c = classify_max_sumfree(s);
  // |S| > 9 * 2^(r-5)  <=>  32 |S| > 9 * 2^r
  const bool large = 32 * s.size() > 9 * s.universe();
  PredicateReport report = (!large || c.tag != SumfreeTag::Other)
                               ? pass("large-sumfree-form")
                               : fail("large-sumfree-form", {"unclassified-set", s.elements()});
  report.details["large"] = large;
  report.details["tag"] = to_string(c.tag);
  return report;
}

ElementSet construct_coset(GroupRank r, Element functional, Element g) {
  const Subgroup h = hyperplane(r, functional);
  if (!r.contains(g) || h.contains(g)) throw PreconditionError("construct_coset: g must lie outside H");
  return h.members().translate(g);
}

ElementSet construct_punctured_subgroup(GroupRank r, Element functional, Element g) {
  const Subgroup h = hyperplane(r, functional);
  if (!r.contains(g) || h.contains(g)) throw PreconditionError("construct_punctured_subgroup: g must lie outside H");
  ElementSet a = h.members();
  a.erase(0);
  a.insert(g);
  return a;
}

ElementSet construct_shifted_cap(const ElementSet& s, Element shift) {
  if (!sum_free(s)) throw PreconditionError("construct_shifted_cap: S must be sum-free");
  if (shift != 0 && !s.contains(shift)) throw PreconditionError("construct_shifted_cap: shift must lie in S u {0}");
  return Decomposition{shift, s, DecompositionKind::SaturatingForm}.expand();
}

ElementSet construct_cap_replacement(const ElementSet& s, Element fixed) {
  if (!sum_free(s)) throw PreconditionError("construct_cap_replacement: S must be sum-free");
  if (!s.contains(fixed)) throw PreconditionError("construct_cap_replacement: fixed point must lie in S");
  ElementSet a = without(s, fixed).translate(fixed);
  a.insert(fixed);
  return a;
}

ElementSet construct_product(const Subgroup& f, const Subgroup& h) {
  const GroupRank r = f.rank();
  if (!(h.rank() == r)) throw RankError("construct_product: rank mismatch");
  if (f.dim() + h.dim() != r.value() || f.members().intersects(without(h.members(), 0)) ||
      f.order() < 4 || h.order() < 4) {
    throw PreconditionError("construct_product: need G = F (+) H with |F|, |H| >= 4");
  }
  return without(f.members() | h.members(), 0);
}

ElementSet construct_product(GroupRank r, int f_dim) {
  std::vector<Element> fg, hg;
  for (int i = 0; i < r.value(); ++i) (i < f_dim ? fg : hg).push_back(Element{1} << i);
  return construct_product(span(r, fg), span(r, hg));
}

ElementSet construct_five_point(GroupRank r) {
  if (r.value() < 4) throw PreconditionError("construct_five_point: needs r >= 4");
  const ElementSet b(r, {1, 2, 4, 8, 15});
  std::vector<Element> hg;
  for (int i = 4; i < r.value(); ++i) hg.push_back(Element{1} << i);
  return sumset(b, span(r, hg).members());
}

ElementSet point_complement(const ElementSet& b) {
  require_point_set(b, "point_complement");
  return without(b.complement(), 0);
}

PredicateReport is_blocking(const ElementSet& b) {
  require_point_set(b, "is_blocking");
  std::optional<Witness> missed;
  for_each_line(b.rank(), [&](Element x, Element y, Element z) {
    if (!missed && !b.contains(x) && !b.contains(y) && !b.contains(z)) missed = Witness{"unblocked-line", {x, y, z}};
  });
  if (missed) return fail("blocking", *missed);
  return pass("blocking");
}

PredicateReport is_minimal_blocking(const ElementSet& b) {
  auto base = is_blocking(b);
  if (!base.verdict) {
    base.predicate = "minimal-blocking";
    return base;
  }
  // b is essential iff some line meets B only in b.
  std::vector<bool> tangent(b.universe(), false);
  for_each_line(b.rank(), [&](Element x, Element y, Element z) {
    const int hits = b.contains(x) + b.contains(y) + b.contains(z);
    if (hits != 1) return;
    tangent[b.contains(x) ? x : b.contains(y) ? y : z] = true;
  });
  std::optional<Element> removable;
  b.for_each([&](Element p) {
    if (!removable && !tangent[p]) removable = p;
  });
  if (removable) return fail("minimal-blocking", {"removable-point", {*removable}});
  return pass("minimal-blocking");
}

ElementSet tangent_construction(const ElementSet& b, Element s) {
  require_point_set(b, "tangent_construction");
  if (s == 0 || !b.rank().contains(s) || b.contains(s)) {
    throw PreconditionError("tangent_construction: s must be a point outside B");
  }
  ElementSet a(b.rank());
  a.insert(s);
  b.for_each([&](Element p) {
    if (!b.contains(p ^ s)) a.insert(p);
  });
  return a;
}

std::vector<BlockingForm> blocking_forms(const ElementSet& a) {
  require_point_set(a, "blocking_forms");
  std::vector<BlockingForm> out;
  const ElementSet comp = point_complement(a);
  if (is_minimal_blocking(comp).verdict) out.push_back({std::nullopt, comp});

  const Element n = static_cast<Element>(a.universe());
  a.for_each([&](Element s) {
    // Lines through s pair x with s + x. A pair meeting A\{s} once puts that
    // point in B and keeps its partner out; a pair missing A is all-in or
    // all-out; a pair inside A is impossible.
    ElementSet forced(a.rank());
    std::vector<Element> free_pairs;
    bool possible = true;
    for (Element x = 1; x < n && possible; ++x) {
      const Element y = x ^ s;
      if (x == s || y < x) continue;
      const bool in_x = a.contains(x);
      const bool in_y = a.contains(y);
      if (in_x && in_y) {
        possible = false;
      } else if (in_x) {
        forced.insert(x);
      } else if (in_y) {
        forced.insert(y);
      } else {
        free_pairs.push_back(x);
      }
    }
    if (!possible || free_pairs.size() > 20) return;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_pairs.size()); ++mask) {
      ElementSet b = forced;
      for (std::size_t i = 0; i < free_pairs.size(); ++i) {
        if (mask >> i & 1u) {
          b.insert(free_pairs[i]);
          b.insert(free_pairs[i] ^ s);
        }
      }
      if (tangent_construction(b, s) == a && is_minimal_blocking(b).verdict) out.push_back({s, std::move(b)});
    }
  });
  return out;
}

const char* to_string(CosetType t) {
  switch (t) {
    case CosetType::T0: return "0";
    case CosetType::T1: return "1";
    case CosetType::T2Zero: return "2^0";
    case CosetType::T2Minus: return "2^-";
    case CosetType::T2Plus: return "2^+";
    case CosetType::T3Minus: return "3^-";
    case CosetType::T3Plus: return "3^+";
    case CosetType::T4Minus: return "4^-";
    case CosetType::T4Plus: return "4^+";
    case CosetType::Unclassified: return "unclassified";
  }
  return "?";
}

ElementSet normalize_for_census(const ElementSet& a) {
  const UrGraph g = build_urgraph(a);
  const auto iso = isolated_edges(g.graph);
  if (iso.size() < 2) throw PreconditionError("census: needs at least two isolated edges");
  return a.translate(g.vertices[iso.front().first]);
}

CosetCensus coset_census(const ElementSet& a, std::optional<std::array<Graph::Edge, 2>> edges) {
  const GroupRank r = a.rank();
  if (r.value() < 3) throw PreconditionError("census: needs r >= 3");
  if (!a.contains(0)) throw PreconditionError("census: 0 must belong to A");
  if (!round_set(a)) throw PreconditionError("census: A must be round");
  const UrGraph g = build_urgraph(a);
  const auto iso = isolated_edges(g.graph);
  if (iso.size() < 2) throw PreconditionError("census: needs at least two isolated edges");
  const std::array<Graph::Edge, 2> chosen = edges.value_or(std::array<Graph::Edge, 2>{iso[0], iso[1]});
  for (const auto& e : chosen) {
    if (std::find(iso.begin(), iso.end(), e) == iso.end()) throw PreconditionError("census: chosen edge is not isolated");
  }
  if (g.vertices[chosen[0].first] != 0) throw PreconditionError("census: first isolated edge must be incident to 0");

  const Element a1 = g.vertices[chosen[0].second];
  const Element a2 = g.vertices[chosen[1].first];
  const Element a3 = g.vertices[chosen[1].second];
  if ((a1 ^ a2) == a3) {
    // Both edges would carry the label a1 in D(A), but distinct edges have
    // distinct labels.
    throw std::logic_error("census: isolated edges (0,a1), (a2,a3) with a3 = a1 + a2");
  }

  auto sub = [&](std::initializer_list<Element> gens) { return span(r, std::vector<Element>(gens)); };
  CosetCensus c{a1, a2, a3,
                sub({a1, a2, a3}), sub({a3, a1 ^ a2}), sub({a2, a1 ^ a3}), sub({a1 ^ a2 ^ a3}), sub({a1, a2 ^ a3}),
                {}, {}, false, false, false, false, {}, {}};

  const ElementSet d = unique_sums(a);
  const ElementSet dd = doubling(d);
  c.sum_premise = !dd.contains(a1) && !dd.contains(a2 ^ a3);
  c.size_hypothesis = a.size() > (a.universe() >> 2) + 3;
  auto conditional = [&](std::string what) {
    (c.sum_premise ? c.violations : c.premise_failures).push_back(std::move(what));
  };
  const ElementSet a_zero = a & c.l.members();
  if (!(a_zero == ElementSet(r, {0, a1, a2, a3}))) c.violations.push_back("A_0 != {0, a1, a2, a3}");

  const auto index = c.l.index();
  for (Element q = 0; q < index; ++q) {
    const Element rep = c.l.lift(q);
    const ElementSet coset = c.l.members().translate(rep);
    const ElementSet ag = a & coset;
    const std::size_t dg = (d & coset).size();
    const std::size_t km = quotient_project(ag, c.k_minus).size();
    const std::size_t kp = quotient_project(ag, c.k_plus).size();
    const std::size_t i = ag.size();
    CosetType type = CosetType::Unclassified;
    if (i == 0) {
      type = CosetType::T0;
    } else if (i == 1) {
      type = CosetType::T1;
    } else if (i <= 4) {
      const bool zero = km == 1 && kp == 1;
      const bool minus = kp > km && km == 1;
      const bool plus = km > kp && kp == 1;
      if (zero && i == 2) type = CosetType::T2Zero;
      if (minus) type = i == 2 ? CosetType::T2Minus : i == 3 ? CosetType::T3Minus : CosetType::T4Minus;
      if (plus) type = i == 2 ? CosetType::T2Plus : i == 3 ? CosetType::T3Plus : CosetType::T4Plus;
    }
    c.cosets.push_back({rep, i, dg, km, kp, type});

    const std::string where = "coset " + std::to_string(rep);
    if (q == 0) {
      if (dg != 2) conditional("|D_g| != 2 on L");
      continue;
    }
    if (i > 4) c.violations.push_back(where + ": |A_g| > 4");
    if (std::min(km, kp) > 1) c.violations.push_back(where + ": A_g meets two K- and two K+ cosets");
    if (type == CosetType::Unclassified) c.violations.push_back(where + ": unclassified type");
    const bool zero_d = type == CosetType::T2Zero || i == 3 || i == 4;
    const bool small_d = type == CosetType::T1 || type == CosetType::T2Minus || type == CosetType::T2Plus;
    if (zero_d && dg != 0) c.violations.push_back(where + ": |D_g| != 0");
    if (small_d && dg > 2) conditional(where + ": |D_g| > 2");
    if (type == CosetType::T0 && dg > 4) conditional(where + ": |D_g| > 4");
  }

  for (const char* key : {"n0", "n1", "n2_0", "n2_-", "n2_+", "n3_0", "n3_-", "n3_+", "n4_0", "n4_-", "n4_+"}) {
    c.counts[key] = 0;
  }
  std::size_t n[5] = {0, 0, 0, 0, 0};
  for (std::size_t k = 1; k < c.cosets.size(); ++k) {
    const auto& rec = c.cosets[k];
    if (rec.a_count <= 4) ++n[rec.a_count];
    switch (rec.type) {
      case CosetType::T0: ++c.counts["n0"]; break;
      case CosetType::T1: ++c.counts["n1"]; break;
      case CosetType::T2Zero: ++c.counts["n2_0"]; break;
      case CosetType::T2Minus: ++c.counts["n2_-"]; break;
      case CosetType::T2Plus: ++c.counts["n2_+"]; break;
      case CosetType::T3Minus: ++c.counts["n3_-"]; break;
      case CosetType::T3Plus: ++c.counts["n3_+"]; break;
      case CosetType::T4Minus: ++c.counts["n4_-"]; break;
      case CosetType::T4Plus: ++c.counts["n4_+"]; break;
      case CosetType::Unclassified:
        if (rec.a_count == 3) ++c.counts["n3_0"];
        if (rec.a_count == 4) ++c.counts["n4_0"];
        break;
    }
  }
  c.coset_sum_identity = n[0] + n[1] + n[2] + n[3] + n[4] == (a.universe() >> 3) - 1;
  c.weighted_sum_identity = n[1] + 2 * n[2] + 3 * n[3] + 4 * n[4] + 4 == a.size();
  if (!c.coset_sum_identity) c.violations.push_back("sum of n_i != 2^(r-3) - 1");
  if (!c.weighted_sum_identity) c.violations.push_back("n1 + 2n2 + 3n3 + 4n4 != |A| - 4");
  return c;
}

}  // namespace sumsat
