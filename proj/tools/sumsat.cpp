// Command-line front end. JSON goes to stdout, one-line summaries to
// stderr. Exit codes: 0 verdict true, 1 verdict false, 2 usage or input
// error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "sumsat/canonical.hpp"
#include "sumsat/fuzz.hpp"
#include "sumsat/io.hpp"
#include "sumsat/search.hpp"
#include "sumsat/structure.hpp"
#include "sumsat/sumset.hpp"
#include "sumsat/threshold.hpp"
#include "sumsat/urgraph.hpp"

#ifndef SUMSAT_GIT_DESCRIBE
#define SUMSAT_GIT_DESCRIBE "unknown"
#endif

using nlohmann::json;
using namespace sumsat;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Flags {
  std::optional<int> r;
  std::string set_text, file, set2_text, file2;
  std::optional<std::size_t> size_min, size_max, size;
  std::string action = "linear";
  std::string threshold = "paper";
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<std::uint64_t> budget_nodes;
  std::optional<double> budget_secs;
  bool audit = false;
  std::string tsv;
  std::uint64_t iters = 1000;
  std::optional<int> kappa;
  std::uint64_t k = 1;
  std::string form = "saturating";
  std::string predicate;
  std::optional<Element> u, g, s;
  std::optional<int> f_dim;
  std::size_t attempts = 20000;
  bool normalize = false;
  bool allow_zero = false;
};

int emit(const json& j, bool verdict, const std::string& summary) {
  std::cout << j.dump(2) << '\n';
  std::cerr << summary << '\n';
  return verdict ? kTrue : kFalse;
}

int emit_report(const PredicateReport& r) {
  return emit(to_json(r), r.verdict, r.predicate + ": " + (r.verdict ? "true" : "false"));
}

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

ElementSet read_set(const std::string& inline_text, const std::string& path, bool allow_stdin, const char* what) {
  if (!inline_text.empty() && !path.empty()) throw UsageError(std::string("give either the inline ") + what + " or a file");
  if (!inline_text.empty()) return parse_set(inline_text);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    return parse_set(slurp(in));
  }
  if (!allow_stdin) throw UsageError(std::string("missing ") + what);
  return parse_set(slurp(std::cin));
}

ElementSet primary_set(const Flags& f) {
  ElementSet a = read_set(f.set_text, f.file, true, "--set");
  if (f.r && *f.r != a.rank().value()) throw RankError("--r disagrees with the rank of the input set");
  return a;
}

ElementSet second_set(const Flags& f, const ElementSet& first) {
  ElementSet b = read_set(f.set2_text, f.file2, false, "--set2");
  if (!(b.rank() == first.rank())) throw RankError("the two input sets have different ranks");
  return b;
}

GroupRank need_rank(const Flags& f) {
  if (!f.r) throw UsageError("--r is required");
  if (*f.r < 1 || *f.r > kMaxRank) throw RankError("--r must be in 1.." + std::to_string(kMaxRank));
  return GroupRank(*f.r);
}

SearchOptions search_options(const Flags& f) {
  SearchOptions o;
  o.action = parse_action(f.action);
  o.size_min = f.size_min.value_or(0);
  o.size_max = f.size_max;
  o.budget.nodes = f.budget_nodes;
  o.budget.seconds = f.budget_secs;
  o.threads = f.threads;
  o.audit = f.audit;
  o.seed = f.seed;
  return o;
}

int cmd_check(const std::string& pred, const Flags& f) {
  const ElementSet a = primary_set(f);
  if (pred == "sum-free") return emit_report(is_sum_free(a));
  if (pred == "maximal-sum-free") return emit_report(is_maximal_sum_free(a));
  if (pred == "saturating") return emit_report(is_saturating(a));
  if (pred == "minimal-saturating") return emit_report(is_minimal_saturating(a));
  if (pred == "round") return emit_report(is_round(a));
  if (pred == "kneser") return emit_report(kneser_check(a, second_set(f, a)));
  if (pred == "php") return emit_report(php_check(a, second_set(f, a), f.k));
  if (pred == "alldisjoint") return emit_report(alldisjoint_check(a, second_set(f, a)));
  if (pred == "s2") return emit_report(s2_bound_check(a, second_set(f, a)));
  if (pred == "sfnotround") return emit_report(sfnotround_check(a, f.kappa.value_or(2)));
  if (pred == "1s2r") return emit_report(one_saturating_two_round_check(a));
  if (pred == "degree-sum") return emit_report(degree_sum_check(a));
  if (pred == "triangle-free") return emit_report(triangle_free_check(a));
  if (pred == "dishalf") return emit_report(dishalf_check(a));
  if (pred == "matching-bound") return emit_report(matching_bound_check(a));
  if (pred == "blocking") return emit_report(is_blocking(a));
  if (pred == "minimal-blocking") return emit_report(is_minimal_blocking(a));
  if (pred == "large-sumfree-form") return emit_report(large_sumfree_form_check(a));
  if (pred == "linegraph") return emit_report(linegraph_check(build_urgraph(a).graph));
  if (pred == "highfive") return emit_report(highfive_check(build_urgraph(a).graph));
  if (pred == "matching2") return emit_report(matching2_check(build_urgraph(a).graph));
  throw UsageError("unknown predicate '" + pred + "'");
}

int cmd_dset(const Flags& f) {
  const ElementSet a = primary_set(f);
  const ElementSet d = unique_sums(a);
  const json j = {{"set", set_to_json(a)}, {"D", set_to_json(d)}, {"size", d.size()}, {"convention", "unordered"}};
  return emit(j, true, "|D(A)| = " + std::to_string(d.size()));
}

int cmd_graph(const Flags& f) {
  const ElementSet a = primary_set(f);
  const UrGraph g = build_urgraph(a);
  return emit(to_json(g), true,
              "graph: " + std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.graph.edge_count()) +
                  " edges");
}

int cmd_decompose(const Flags& f) {
  const ElementSet a = primary_set(f);
  std::vector<Decomposition> decs;
  if (f.form == "saturating") {
    decs = decompose_saturating(a);
  } else if (f.form == "round") {
    decs = decompose_round(a);
  } else {
    throw UsageError("--form must be saturating or round");
  }
  json list = json::array();
  for (const auto& d : decs) list.push_back(to_json(d));
  const json j = {{"set", set_to_json(a)}, {"form", f.form}, {"decompositions", list}};
  return emit(j, !decs.empty(), std::to_string(decs.size()) + " decomposition(s)");
}

int cmd_classify(const Flags& f) {
  const ElementSet s = primary_set(f);
  const SumfreeClass c = classify_max_sumfree(s);
  return emit(to_json(c, s), true, std::string("class: ") + to_string(c.tag));
}

int cmd_census(const Flags& f) {
  ElementSet a = primary_set(f);
  if (f.normalize) a = normalize_for_census(a);
  const CosetCensus c = coset_census(a);
  json j = to_json(c);
  j["set"] = set_to_json(a);
  return emit(j, c.violations.empty(), "census: " + std::to_string(c.violations.size()) + " violation(s)");
}

int cmd_construct(const std::string& kind, const Flags& f) {
  std::optional<ElementSet> out;
  auto rank = [&] { return need_rank(f); };
  auto top = [&] { return Element{1} << (rank().value() - 1); };
  if (kind == "coset") {
    out = construct_coset(rank(), f.u.value_or(top()), f.g.value_or(top()));
  } else if (kind == "punctured") {
    out = construct_punctured_subgroup(rank(), f.u.value_or(top()), f.g.value_or(top()));
  } else if (kind == "shifted-cap") {
    const ElementSet s = primary_set(f);
    out = construct_shifted_cap(s, f.s.value_or(0));
  } else if (kind == "cap-replacement") {
    const ElementSet s = primary_set(f);
    if (!f.s) throw UsageError("--s is required");
    out = construct_cap_replacement(s, *f.s);
  } else if (kind == "product") {
    const GroupRank r = rank();
    out = construct_product(r, f.f_dim.value_or(r.value() / 2));
  } else if (kind == "five-point") {
    out = construct_five_point(rank());
  } else if (kind == "tangent") {
    const ElementSet b = primary_set(f);
    if (!f.s) throw UsageError("--s is required");
    out = tangent_construction(b, *f.s);
  } else {
    throw UsageError("unknown construction '" + kind + "'");
  }
  json j = {{"kind", kind}, {"set", set_to_json(*out)}, {"size", out->size()}};
  if (!out->contains(0)) j["minimal_saturating"] = minimal_saturating(*out);
  j["sum_free"] = sum_free(*out);
  return emit(j, true, kind + ": " + std::to_string(out->size()) + " elements");
}

int cmd_enumerate(const Flags& f, bool compact) {
  const GroupRank r = need_rank(f);
  const SearchPredicate p = parse_search_predicate(f.predicate.empty() ? "minimal-saturating" : f.predicate);
  Flags g = f;
  if (p == SearchPredicate::Round && f.action == "linear") g.action = "affine";
  const SpectrumReport s = enumerate(r, p, search_options(g));
  if (!f.tsv.empty()) {
    std::ofstream out(f.tsv);
    if (!out) throw InputError("cannot write " + f.tsv);
    out << spectrum_to_tsv(s);
  }
  json j = to_json(s);
  if (compact) {
    for (auto& e : j["entries"]) e.erase("representatives");
  }
  const bool ok = s.complete && (!s.audit || s.audit->failures.empty());
  return emit(j, ok,
              std::string(s.status()) + ": " + std::to_string(s.class_count()) + " class(es), " +
                  std::to_string(s.seconds) + " s");
}

int cmd_verify(const std::string& theorem, const Flags& f) {
  const GroupRank r = need_rank(f);
  const SearchOptions o = search_options(f);
  if (theorem == "classification") return emit_report(verify_classification(r, Threshold::parse(f.threshold), o));
  if (theorem == "second-largest") return emit_report(second_largest_check(r, o));
  if (theorem == "alldisjoint-sharpness") return emit_report(alldisjoint_sharpness_check(r));
  if (theorem == "blocking-form") {
    // Every minimal 1-saturating class above the threshold has a blocking
    // form, and every saturating decomposition matches one.
    SearchOptions so = o;
    so.action = SymmetryAction::Linear;
    so.size_min = Threshold::parse(f.threshold).first_size_above(r.value());
    const SpectrumReport s = enumerate(r, SearchPredicate::MinimalSaturating, so);
    PredicateReport rep = pass("blocking-form");
    std::size_t checked = 0;
    for (const auto& e : s.entries) {
      for (const auto& a : e.representatives) {
        ++checked;
        const auto forms = blocking_forms(a);
        bool matches = !forms.empty();
        for (const auto& d : decompose_saturating(a)) {
          bool found = false;
          for (const auto& bf : forms) {
            if (d.shift == 0) {
              found = found || (!bf.s && bf.b == point_complement(d.base));
            } else {
              found = found || (bf.s && *bf.s == d.shift && bf.b == point_complement(d.base));
            }
          }
          matches = matches && found;
        }
        if (!matches && rep.verdict) rep = fail("blocking-form", {"unmatched-set", a.elements()});
      }
    }
    if (rep.verdict && !s.complete) rep = fail("blocking-form", {"incomplete-search", {}});
    rep.details["classes_checked"] = checked;
    rep.details["status"] = s.status();
    return emit_report(rep);
  }
  throw UsageError("unknown theorem '" + theorem + "'");
}

int cmd_find(const Flags& f) {
  const GroupRank r = need_rank(f);
  if (!f.size) throw UsageError("--size is required");
  const SearchPredicate p = parse_search_predicate(f.predicate.empty() ? "minimal-saturating" : f.predicate);
  const auto found = find_example(r, p, *f.size, FindOptions{f.seed, f.attempts});
  json j = {{"r", r.value()}, {"predicate", to_string(p)}, {"size", *f.size}, {"seed", f.seed}, {"found", found.has_value()},
            {"set", nullptr}};
  if (found) j["set"] = set_to_json(*found);
  return emit(j, found.has_value(), found ? "found" : "none within budget");
}

int cmd_fuzz(const std::string& lemma, const Flags& f) {
  FuzzOptions o;
  o.iterations = f.iters;
  o.seed = f.seed;
  if (f.r) o.r_max = *f.r;
  if (lemma == "kneser") return emit_report(fuzz_kneser(o));
  if (lemma == "s2") return emit_report(fuzz_s2(o));
  if (lemma == "alldisjoint") return emit_report(fuzz_alldisjoint(o));
  if (lemma == "sfnotround") {
    o.r_min = 2;
    return emit_report(fuzz_sfnotround(o, f.kappa.value_or(2)));
  }
  if (lemma == "sfnotround-sweep") {
    std::vector<int> kappas = f.kappa ? std::vector<int>{*f.kappa} : std::vector<int>{2, 3};
    return emit_report(sfnotround_sweep(need_rank(f), kappas, search_options(f)));
  }
  if (lemma == "round-props") {
    o.r_min = 3;
    return emit_report(fuzz_round_properties(o));
  }
  if (lemma == "graph") return emit_report(fuzz_graph_lemmas(o));
  if (lemma == "round-graph") return emit_report(fuzz_round_graph(o));
  throw UsageError("unknown lemma '" + lemma + "'");
}

int cmd_canonical(const Flags& f) {
  const ElementSet a = primary_set(f);
  const CanonicalForm c = canonical_form(a, parse_action(f.action), f.allow_zero);
  return emit(to_json(c), true, "canonical form computed");
}

void add_set_flags(CLI::App* c, Flags& f) {
  c->add_option("--set", f.set_text, "set literal as JSON");
  c->add_option("--file", f.file, "file holding a set literal");
  c->add_option("--r", f.r, "group rank");
}

void add_search_flags(CLI::App* c, Flags& f) {
  c->add_option("--r", f.r, "group rank");
  c->add_option("--size-min", f.size_min, "smallest size reported");
  c->add_option("--size-max", f.size_max, "largest size searched");
  c->add_option("--action", f.action, "linear, affine or none")->check(CLI::IsMember({"linear", "affine", "none"}));
  c->add_option("--threads", f.threads, "worker threads");
  c->add_option("--budget-nodes", f.budget_nodes, "node budget");
  c->add_option("--budget-secs", f.budget_secs, "wall-clock budget in seconds");
  c->add_flag("--audit", f.audit, "re-check 1000 pruned nodes with a plain oracle");
  c->add_option("--seed", f.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sumsets, saturating sets and caps in F_2^r"};
  app.set_version_flag("--version", std::string("sumsat ") + SUMSAT_GIT_DESCRIBE);
  app.require_subcommand(1);
  Flags f;
  std::string which;

  auto* check = app.add_subcommand("check", "evaluate a predicate on a set");
  check->add_option("predicate", which, "predicate name")->required();
  add_set_flags(check, f);
  check->add_option("--set2", f.set2_text, "second set literal");
  check->add_option("--file2", f.file2, "file holding the second set");
  check->add_option("--k", f.k, "multiplicity for php");
  check->add_option("--kappa", f.kappa, "kappa for sfnotround");

  auto* dset = app.add_subcommand("dset", "unique-representation set D(A)");
  add_set_flags(dset, f);
  auto* graph = app.add_subcommand("graph", "unique-representation graph");
  add_set_flags(graph, f);
  auto* decompose = app.add_subcommand("decompose", "saturating or round decompositions");
  add_set_flags(decompose, f);
  decompose->add_option("--form", f.form, "saturating or round");
  auto* classify = app.add_subcommand("classify-sumfree", "classify a maximal sum-free set");
  add_set_flags(classify, f);
  auto* census = app.add_subcommand("census", "coset census of a round set with two isolated edges");
  add_set_flags(census, f);
  census->add_flag("--normalize", f.normalize, "translate so the first isolated edge starts at 0");
  auto* canonical = app.add_subcommand("canonical", "canonical form under the action");
  add_set_flags(canonical, f);
  canonical->add_option("--action", f.action, "linear, affine or none");
  canonical->add_flag("--allow-zero", f.allow_zero, "allow 0 in the set under the linear action");

  auto* construct = app.add_subcommand("construct", "build a set from a named construction");
  construct->add_option("kind", which, "construction")->required();
  add_set_flags(construct, f);
  construct->add_option("--u", f.u, "functional defining the index-2 subgroup");
  construct->add_option("--g", f.g, "element outside the subgroup");
  construct->add_option("--s", f.s, "shift or fixed point");
  construct->add_option("--f-dim", f.f_dim, "dimension of F for product");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "isomorph-free enumeration");
  add_search_flags(enumerate_cmd, f);
  enumerate_cmd->add_option("--predicate", f.predicate, "minimal-saturating, maximal-sum-free, sum-free, round");
  enumerate_cmd->add_option("--tsv", f.tsv, "also write a TSV table to this path");
  auto* spectrum = app.add_subcommand("spectrum", "size spectrum without representatives");
  add_search_flags(spectrum, f);
  spectrum->add_option("--predicate", f.predicate, "minimal-saturating, maximal-sum-free, sum-free, round");
  spectrum->add_option("--tsv", f.tsv, "also write a TSV table to this path");

  auto* verify = app.add_subcommand("verify", "exhaustive theorem check");
  verify->add_option("theorem", which, "classification, second-largest, blocking-form, alldisjoint-sharpness")
      ->required();
  add_search_flags(verify, f);
  verify->add_option("--threshold", f.threshold, "paper, light, or an expression in r");

  auto* find = app.add_subcommand("find-example", "randomized search for an example");
  find->add_option("--r", f.r, "group rank");
  find->add_option("--predicate", f.predicate, "predicate");
  find->add_option("--size", f.size, "target size");
  find->add_option("--seed", f.seed, "random seed");
  find->add_option("--attempts", f.attempts, "restart budget");

  auto* fuzz = app.add_subcommand("fuzz", "randomized lemma checks");
  fuzz->add_option("lemma", which, "kneser, s2, alldisjoint, sfnotround, sfnotround-sweep, round-props, graph, round-graph")
      ->required();
  add_search_flags(fuzz, f);
  fuzz->add_option("--iters", f.iters, "iterations");
  fuzz->add_option("--kappa", f.kappa, "kappa for sfnotround");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (f.threads > 0) omp_set_num_threads(f.threads);
  try {
    if (check->parsed()) return cmd_check(which, f);
    if (dset->parsed()) return cmd_dset(f);
    if (graph->parsed()) return cmd_graph(f);
    if (decompose->parsed()) return cmd_decompose(f);
    if (classify->parsed()) return cmd_classify(f);
    if (census->parsed()) return cmd_census(f);
    if (canonical->parsed()) return cmd_canonical(f);
    if (construct->parsed()) return cmd_construct(which, f);
    if (enumerate_cmd->parsed()) return cmd_enumerate(f, false);
    if (spectrum->parsed()) return cmd_enumerate(f, true);
    if (verify->parsed()) return cmd_verify(which, f);
    if (find->parsed()) return cmd_find(f);
    if (fuzz->parsed()) return cmd_fuzz(which, f);
  } catch (const std::invalid_argument& e) {
    std::cout << json{{"error", e.what()}}.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
