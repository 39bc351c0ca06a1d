#pragma once

#include <string>

#include <json.hpp>

#include "sumsat/canonical.hpp"
#include "sumsat/group.hpp"
#include "sumsat/report.hpp"
#include "sumsat/search.hpp"
#include "sumsat/structure.hpp"
#include "sumsat/urgraph.hpp"

namespace sumsat {

// Malformed input: bad JSON, missing fields, elements out of range.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {"r": r, "elements": [...]} or {"r": r, "bits_hex": "..."}; hex digit i
// holds elements 4i..4i+3, lowest bit first.
ElementSet parse_set(const nlohmann::json& j);
ElementSet parse_set(const std::string& text);
nlohmann::json set_to_json(const ElementSet& s);
std::string to_bits_hex(const ElementSet& s);

nlohmann::json to_json(const PredicateReport& r);
nlohmann::json to_json(const UrGraph& g);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const SumfreeClass& c, const ElementSet& s);
nlohmann::json to_json(const CosetCensus& c);
nlohmann::json to_json(const SpectrumReport& s);
nlohmann::json to_json(const CanonicalForm& c);

// One line per class: size, class_count (of that size), representative.
std::string spectrum_to_tsv(const SpectrumReport& s);

const char* to_string(Counting c);

}  // namespace sumsat
