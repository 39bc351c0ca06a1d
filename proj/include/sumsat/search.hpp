#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumsat/canonical.hpp"
#include "sumsat/group.hpp"
#include "sumsat/report.hpp"
#include "sumsat/threshold.hpp"

namespace sumsat {

enum class SearchPredicate { MinimalSaturating, MaximalSumFree, SumFree, Round };

const char* to_string(SearchPredicate p);
SearchPredicate parse_search_predicate(const std::string& s);

// Whether A satisfies p, through the public sumset_calc predicates.
bool satisfies(SearchPredicate p, const ElementSet& a);

struct SearchBudget {
  std::optional<std::uint64_t> nodes;
  std::optional<double> seconds;
};

struct SearchOptions {
  SymmetryAction action = SymmetryAction::Linear;
  std::size_t size_min = 0;
  std::optional<std::size_t> size_max;
  SearchBudget budget;
  int threads = 1;
  bool audit = false;
  std::size_t audit_samples = 1000;
  std::uint64_t seed = 1;
};

enum class PruneReason { SizeCap, Redundant, SchurTriple, ShortOfSize };

const char* to_string(PruneReason p);

struct AuditFailure {
  ElementSet node;
  PruneReason reason;
  std::string detail;
};

struct AuditReport {
  std::size_t pruned_seen = 0;
  std::size_t sampled = 0;
  std::size_t supersets_checked = 0;
  std::vector<AuditFailure> failures;
};

struct SpectrumEntry {
  std::size_t size;
  std::size_t count;
  std::vector<ElementSet> representatives;  // one per class, ascending
};

struct SpectrumReport {
  GroupRank rank{1};
  std::string predicate;
  SymmetryAction action = SymmetryAction::Linear;
  std::size_t size_min = 0;
  std::size_t size_max = 0;
  bool complete = false;  // false: counts are lower bounds
  std::vector<SpectrumEntry> entries;  // non-empty sizes, ascending
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  double seconds = 0;
  std::optional<AuditReport> audit;

  const char* status() const { return complete ? "COMPLETE" : "INCOMPLETE"; }
  std::size_t class_count() const;
  const SpectrumEntry* at_size(std::size_t size) const;
};

// Isomorph-free enumeration by canonical augmentation: level k holds the
// canonical representatives of size k that survive pruning; a child
// P u {x} is kept only when canonical(C \ max C) = P for C its canonical
// form. r >= 5 needs a size range or a budget.
SpectrumReport enumerate(GroupRank r, SearchPredicate p, const SearchOptions& options);

// Every minimal 1-saturating A with |A| > threshold has a non-empty
// decompose_saturating that re-expands to A. r <= 5.
PredicateReport verify_classification(GroupRank r, const Threshold& threshold, const SearchOptions& options);

// Desk-scale surrogate (4 <= r <= 5): top two minimal 1-saturating sizes
// against 2^(r-1) and 5 * 2^(r-4). Recorded, never asserted.
PredicateReport second_largest_check(GroupRank r, const SearchOptions& options);

struct FindOptions {
  std::uint64_t seed = 1;
  std::size_t attempts = 20000;
};

// Randomized construction of a set of the target size satisfying p;
// every returned set has been re-verified.
std::optional<ElementSet> find_example(GroupRank r, SearchPredicate p, std::size_t target_size,
                                       const FindOptions& options);

}  // namespace sumsat
