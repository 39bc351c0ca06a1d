#include "sumsat/io.hpp"

#include <sstream>

#include "sumsat/sumset.hpp"

namespace sumsat {

using nlohmann::json;

const char* to_string(Counting c) {
  switch (c) {
    case Counting::None: return "none";
    case Counting::Ordered: return "ordered";
    case Counting::Unordered: return "unordered";
  }
  return "?";
}

namespace {

std::size_t hex_length(GroupRank r) { return r.order() < 4 ? 1 : r.order() / 4; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

json edge_list(const UrGraph& g, const std::vector<Graph::Edge>& edges) {
  json out = json::array();
  for (const auto& [i, j] : edges) out.push_back({g.vertices[i], g.vertices[j]});
  return out;
}

}  // namespace

ElementSet parse_set(const json& j) {
  if (!j.is_object()) throw InputError("set literal must be a JSON object");
  if (!j.contains("r") || !j["r"].is_number_integer()) throw InputError("set literal needs an integer \"r\"");
  const auto rv = j["r"].get<long long>();
  if (rv < 1 || rv > kMaxRank) throw RankError("r must be in 1.." + std::to_string(kMaxRank));
  const GroupRank r(static_cast<int>(rv));
  const bool has_elements = j.contains("elements");
  const bool has_hex = j.contains("bits_hex");
  if (has_elements == has_hex) throw InputError("set literal needs exactly one of \"elements\" and \"bits_hex\"");

  ElementSet s(r);
  if (has_elements) {
    if (!j["elements"].is_array()) throw InputError("\"elements\" must be an array");
    for (const auto& e : j["elements"]) {
      if (!e.is_number_integer()) throw InputError("elements must be integers");
      const auto x = e.get<long long>();
      if (x < 0 || static_cast<unsigned long long>(x) >= r.order()) {
        throw InputError("element " + std::to_string(x) + " outside [0, 2^" + std::to_string(rv) + ")");
      }
      if (s.contains(static_cast<Element>(x))) throw InputError("duplicate element " + std::to_string(x));
      s.insert(static_cast<Element>(x));
    }
    return s;
  }
  if (!j["bits_hex"].is_string()) throw InputError("\"bits_hex\" must be a string");
  const std::string hex = j["bits_hex"].get<std::string>();
  if (hex.size() != hex_length(r)) {
    throw InputError("\"bits_hex\" must have " + std::to_string(hex_length(r)) + " digits");
  }
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const int v = hex_value(hex[i]);
    if (v < 0) throw InputError("bad hex digit in \"bits_hex\"");
    for (int b = 0; b < 4; ++b) {
      if (!(v >> b & 1)) continue;
      const std::size_t x = 4 * i + static_cast<std::size_t>(b);
      if (x >= r.order()) throw InputError("\"bits_hex\" sets a bit outside the group");
      s.insert(static_cast<Element>(x));
    }
  }
  return s;
}

ElementSet parse_set(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return parse_set(j);
}

json set_to_json(const ElementSet& s) { return {{"r", s.rank().value()}, {"elements", s.elements()}}; }

std::string to_bits_hex(const ElementSet& s) {
  static const char* digits = "0123456789abcdef";
  std::string out(hex_length(s.rank()), '0');
  s.for_each([&](Element x) {
    auto& c = out[x / 4];
    c = digits[hex_value(c) | (1 << (x % 4))];
  });
  return out;
}

json to_json(const PredicateReport& r) {
  json out = {{"predicate", r.predicate},
              {"verdict", r.verdict},
              {"convention", to_string(r.convention)},
              {"witness", nullptr},
              {"details", r.details}};
  if (r.witness) out["witness"] = {{"kind", r.witness->kind}, {"elements", r.witness->elements}};
  return out;
}

json to_json(const UrGraph& g) {
  json edges = json::array();
  for (std::size_t k = 0; k < g.graph.edges().size(); ++k) {
    const auto& [i, j] = g.graph.edges()[k];
    edges.push_back({{"ends", {g.vertices[i], g.vertices[j]}}, {"label", g.labels[k]}});
  }
  json degrees = json::object();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) degrees[std::to_string(g.vertices[i])] = g.graph.degree(i);
  const auto m = matching_number(g.graph);
  json out = {{"r", g.rank.value()},
              {"vertices", g.vertices},
              {"edges", edges},
              {"degrees", degrees},
              {"isolated_vertices", json::array()},
              {"isolated_edges", edge_list(g, isolated_edges(g.graph))},
              {"matching", {{"size", m.size}, {"edges", edge_list(g, m.edges)}}},
              {"triangle", nullptr}};
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (g.graph.degree(i) == 0) out["isolated_vertices"].push_back(g.vertices[i]);
  }
  if (auto t = triangle_witness(g.graph)) {
    out["triangle"] = {g.vertices[(*t)[0]], g.vertices[(*t)[1]], g.vertices[(*t)[2]]};
  }
  if (g.vertices.size() >= 2) out["spanning_star_centers"] = spanning_star_centers(g).elements();
  return out;
}

json to_json(const Decomposition& d) {
  return {{"kind", d.kind == DecompositionKind::SaturatingForm ? "saturating" : "round"},
          {"shift", d.shift},
          {"base", set_to_json(d.base)}};
}

json to_json(const SumfreeClass& c, const ElementSet& s) {
  json out = {{"set", set_to_json(s)}, {"size", s.size()}, {"tag", to_string(c.tag)}};
  if (c.coset_subgroup) out["subgroup_basis"] = c.coset_subgroup->basis();
  if (c.period_subgroup) {
    out["period_basis"] = c.period_subgroup->basis();
    out["quotient_points"] = c.quotient_points;
  }
  return out;
}

json to_json(const CosetCensus& c) {
  json cosets = json::array();
  for (const auto& rec : c.cosets) {
    cosets.push_back({{"representative", rec.representative},
                      {"a_count", rec.a_count},
                      {"d_count", rec.d_count},
                      {"k_minus_image", rec.km_image},
                      {"k_plus_image", rec.kp_image},
                      {"type", to_string(rec.type)}});
  }
  return {{"a1", c.a1},
          {"a2", c.a2},
          {"a3", c.a3},
          {"L", c.l.basis()},
          {"K_minus", c.k_minus.basis()},
          {"K_plus", c.k_plus.basis()},
          {"H", c.h.basis()},
          {"M", c.m.basis()},
          {"cosets", cosets},
          {"counts", c.counts},
          {"coset_sum_identity", c.coset_sum_identity},
          {"weighted_sum_identity", c.weighted_sum_identity},
          {"sum_premise", c.sum_premise},
          {"size_hypothesis", c.size_hypothesis},
          {"violations", c.violations},
          {"premise_failures", c.premise_failures}};
}

json to_json(const SpectrumReport& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    json reps = json::array();
    for (const auto& a : e.representatives) reps.push_back(a.elements());
    entries.push_back({{"size", e.size}, {"count", e.count}, {"representatives", reps}});
  }
  json out = {{"rank", s.rank.value()},
              {"predicate", s.predicate},
              {"action", to_string(s.action)},
              {"size_min", s.size_min},
              {"size_max", s.size_max},
              {"status", s.status()},
              {"counts_exact", s.complete},
              {"entries", entries},
              {"nodes", s.nodes},
              {"pruned", s.pruned},
              {"seconds", s.seconds},
              {"audit", nullptr}};
  if (s.audit) {
    json failures = json::array();
    for (const auto& f : s.audit->failures) {
      failures.push_back({{"node", f.node.elements()}, {"reason", to_string(f.reason)}, {"detail", f.detail}});
    }
    out["audit"] = {{"pruned_seen", s.audit->pruned_seen},
                    {"sampled", s.audit->sampled},
                    {"supersets_checked", s.audit->supersets_checked},
                    {"failures", failures}};
  }
  return out;
}

json to_json(const CanonicalForm& c) { return {{"action", to_string(c.action)}, {"set", set_to_json(c.set)}}; }

std::string spectrum_to_tsv(const SpectrumReport& s) {
  std::ostringstream out;
  out << "size\tclass_count\trepresentative\n";
  for (const auto& e : s.entries) {
    for (const auto& a : e.representatives) {
      out << e.size << '\t' << e.count << '\t';
      const auto el = a.elements();
      for (std::size_t i = 0; i < el.size(); ++i) out << (i ? "," : "") << el[i];
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace sumsat
