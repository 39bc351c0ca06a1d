#include "sumsat/canonical.hpp"

#include <array>
#include <numeric>

#include "sumsat/report.hpp"

namespace sumsat {

const char* to_string(SymmetryAction a) {
  switch (a) {
    case SymmetryAction::Linear: return "linear";
    case SymmetryAction::Affine: return "affine";
    case SymmetryAction::None: return "none";
  }
  return "?";
}

SymmetryAction parse_action(const std::string& s) {
  if (s == "linear") return SymmetryAction::Linear;
  if (s == "affine") return SymmetryAction::Affine;
  if (s == "none") return SymmetryAction::None;
  throw std::invalid_argument("unknown action '" + s + "'");
}

namespace {

// One block of the image: bit z of the block at depth d >= 1 says whether
// target 2^(d-1) + z lies in the image. Depth 0 is the single target 0.
using Pattern = std::array<std::uint64_t, 8>;

// -1 if a is the better (smaller image) block, 1 if worse, 0 if equal.
int compare_patterns(const Pattern& a, const Pattern& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    const std::uint64_t diff = a[w] ^ b[w];
    if (diff) return (a[w] & diff & (~diff + 1)) ? -1 : 1;
  }
  return 0;
}

class MinimalImage {
 public:
  MinimalImage(const ElementSet& a, bool affine)
      : a_(a),
        r_(a.rank().value()),
        n_(a.universe()),
        affine_(affine),
        p_(n_, 0),
        frame_(r_ + 1, 0),
        best_pat_(r_ + 1),
        best_defined_(r_ + 1, false) {}

  CanonicalLabeling run() {
    search(0);
    CanonicalLabeling out{ElementSet(a_.rank()), best_p_, std::move(generators_), nodes_};
    for (std::size_t y = 0; y < n_; ++y) {
      if (a_.contains(best_p_[y])) out.set.insert(static_cast<Element>(y));
    }
    return out;
  }

 private:
  static constexpr int kNone = -1;

  Pattern pattern(int depth, Element x) const {
    Pattern pat{};
    if (depth == 0) {
      pat[0] = a_.contains(x);
      return pat;
    }
    const std::size_t width = std::size_t{1} << (depth - 1);
    const Element shift = x ^ p_[0];
    for (std::size_t z = 0; z < width; ++z) {
      if (a_.contains(p_[z] ^ shift)) pat[z >> 6] |= std::uint64_t{1} << (z & 63);
    }
    return pat;
  }

  void place(int depth, Element x) {
    frame_[depth] = x;
    if (depth == 0) {
      p_[0] = x;
      return;
    }
    const std::size_t width = std::size_t{1} << (depth - 1);
    const Element shift = x ^ p_[0];
    for (std::size_t z = 0; z < width; ++z) p_[width + z] = p_[z] ^ shift;
  }

  // Orbits of the automorphisms found so far that fix frame_[0..depth).
  std::vector<Element> orbit_roots(int depth) const {
    std::vector<Element> parent(n_);
    std::iota(parent.begin(), parent.end(), Element{0});
    auto find = [&](Element x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : generators_) {
      bool fixes = true;
      for (int d = 0; d < depth && fixes; ++d) fixes = g[frame_[d]] == frame_[d];
      if (!fixes) continue;
      for (std::size_t x = 0; x < n_; ++x) {
        const Element u = find(static_cast<Element>(x));
        const Element v = find(g[x]);
        if (u != v) parent[std::max(u, v)] = std::min(u, v);
      }
    }
    for (std::size_t x = 0; x < n_; ++x) parent[x] = find(static_cast<Element>(x));
    return parent;
  }

  // Returns kNone, or the depth the search should resume at after an
  // automorphism showed the rest of the current subtree is redundant.
  int search(int depth) {
    ++nodes_;
    if (depth == r_ + 1) return leaf();

    std::vector<Element> candidates;
    if (depth == 0) {
      if (affine_) {
        candidates.resize(n_);
        std::iota(candidates.begin(), candidates.end(), Element{0});
      } else {
        candidates.push_back(0);
      }
    } else {
      const std::size_t used = std::size_t{1} << (depth - 1);
      std::vector<bool> in_span(n_, false);
      for (std::size_t z = 0; z < used; ++z) in_span[p_[z]] = true;
      for (std::size_t x = 0; x < n_; ++x) {
        if (!in_span[x]) candidates.push_back(static_cast<Element>(x));
      }
    }

    std::vector<Pattern> pats(candidates.size());
    Pattern node_best{};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      pats[i] = pattern(depth, candidates[i]);
      if (i == 0 || compare_patterns(pats[i], node_best) < 0) node_best = pats[i];
    }
    if (best_defined_[depth]) {
      const int c = compare_patterns(node_best, best_pat_[depth]);
      if (c > 0) return kNone;
      if (c < 0) improve(depth, node_best);
    } else {
      improve(depth, node_best);
    }

    std::vector<Element> explored;
    std::vector<Element> roots;
    std::size_t roots_for = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (pats[i] != node_best) continue;
      const Element x = candidates[i];
      if (!explored.empty() && !generators_.empty()) {
        if (roots_for != generators_.size()) {
          roots = orbit_roots(depth);
          roots_for = generators_.size();
        }
        bool seen = false;
        for (Element e : explored) seen = seen || roots[e] == roots[x];
        if (seen) continue;
      }
      explored.push_back(x);
      place(depth, x);
      const int jump = search(depth + 1);
      if (jump != kNone && jump < depth) return jump;
    }
    return kNone;
  }

  void improve(int depth, const Pattern& pat) {
    best_pat_[depth] = pat;
    best_defined_[depth] = true;
    for (int d = depth + 1; d <= r_; ++d) best_defined_[d] = false;
    best_valid_ = false;
  }

  int leaf() {
    if (!best_valid_) {
      best_p_ = p_;
      best_frame_ = frame_;
      best_valid_ = true;
      return kNone;
    }
    std::vector<Element> g(n_);
    for (std::size_t y = 0; y < n_; ++y) g[best_p_[y]] = p_[y];
    generators_.push_back(std::move(g));
    int diverge = 0;
    while (frame_[diverge] == best_frame_[diverge]) ++diverge;
    return diverge;
  }

  const ElementSet& a_;
  int r_;
  std::size_t n_;
  bool affine_;
  std::vector<Element> p_;
  std::vector<Element> frame_;
  std::vector<Pattern> best_pat_;
  std::vector<bool> best_defined_;
  bool best_valid_ = false;
  std::vector<Element> best_p_;
  std::vector<Element> best_frame_;
  std::vector<std::vector<Element>> generators_;
  std::size_t nodes_ = 0;
};

}  // namespace

CanonicalLabeling canonical_labeling(const ElementSet& a, SymmetryAction action, bool allow_zero) {
  if (action == SymmetryAction::None) {
    std::vector<Element> id(a.universe());
    std::iota(id.begin(), id.end(), Element{0});
    return CanonicalLabeling{a, std::move(id), {}, 0};
  }
  if (a.rank().value() > kCanonicalMaxRank) {
    throw RankError("canonical form supports r <= " + std::to_string(kCanonicalMaxRank));
  }
  if (action == SymmetryAction::Linear && a.contains(0) && !allow_zero) {
    throw PreconditionError("linear canonical form: 0 in A needs an explicit override");
  }
  return MinimalImage(a, action == SymmetryAction::Affine).run();
}

CanonicalForm canonical_form(const ElementSet& a, SymmetryAction action, bool allow_zero) {
  return CanonicalForm{canonical_labeling(a, action, allow_zero).set, action};
}

Element AffineMap::operator()(Element x) const {
  Element y = shift;
  for (std::size_t i = 0; x; ++i, x >>= 1) {
    if (x & 1u) y ^= columns[i];
  }
  return y;
}

ElementSet AffineMap::operator()(const ElementSet& a) const {
  ElementSet out(rank);
  a.for_each([&](Element x) { out.insert((*this)(x)); });
  return out;
}

AffineMap random_map(GroupRank r, Rng& rng, bool affine) {
  AffineMap m{r, {}, 0};
  // Reduced basis indexed by pivot bit, for the independence test.
  std::vector<Element> basis(r.value(), 0);
  auto reduce = [&](Element x) {
    for (int b = r.value() - 1; b >= 0; --b) {
      if ((x >> b & 1u) && basis[b]) x ^= basis[b];
    }
    return x;
  };
  while (static_cast<int>(m.columns.size()) < r.value()) {
    const Element c = static_cast<Element>(rng.below(r.order()));
    const Element red = reduce(c);
    if (red == 0) continue;
    basis[31 - __builtin_clz(red)] = red;
    m.columns.push_back(c);
  }
  if (affine) m.shift = static_cast<Element>(rng.below(r.order()));
  return m;
}

}  // namespace sumsat
