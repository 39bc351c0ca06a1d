#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumsat/group.hpp"

namespace sumsat {

// Thrown when an operation's input violates its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Which way representations b + c are counted by a check.
enum class Counting { None, Ordered, Unordered };

struct Witness {
  std::string kind;  // e.g. "schur-triple", "removable-element"
  std::vector<Element> elements;
};

struct PredicateReport {
  std::string predicate;
  bool verdict = false;
  Counting convention = Counting::None;
  std::optional<Witness> witness;  // always present when verdict is false
  nlohmann::json details = nlohmann::json::object();
};

inline PredicateReport pass(std::string predicate, Counting convention = Counting::None) {
  return PredicateReport{std::move(predicate), true, convention, std::nullopt, nlohmann::json::object()};
}

inline PredicateReport fail(std::string predicate, Witness w, Counting convention = Counting::None) {
  return PredicateReport{std::move(predicate), false, convention, std::move(w), nlohmann::json::object()};
}

}  // namespace sumsat
