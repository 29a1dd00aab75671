#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "citerank/model.hpp"

namespace citerank {

struct ReferenceSetKey {
  std::string subject_category;
  std::string doc_type;

  auto operator<=>(const ReferenceSetKey&) const = default;
};

/// "category|doc_type"
std::string to_string(const ReferenceSetKey& key);

/// All papers of one (subject category, document type) pair.
struct ReferenceSet {
  ReferenceSetKey key;
  std::vector<std::string> member_ids;
  /// Positions of the members in the corpus, parallel to member_ids.
  std::vector<std::size_t> members;

  std::size_t size() const noexcept { return member_ids.size(); }
};

struct DroppedSet {
  ReferenceSetKey key;
  std::size_t size = 0;
};

struct DroppedPaper {
  std::string paper_id;
  std::string reason;
};

struct ExclusionReport {
  std::vector<DroppedSet> dropped_sets;
  std::vector<DroppedPaper> dropped_papers;
};

struct ReferenceSets {
  /// Sorted by key.
  std::vector<ReferenceSet> sets;
  ExclusionReport report;

  /// Corpus positions of papers with at least one surviving set, ascending.
  std::vector<std::size_t> surviving_papers() const;
};

/// Groups the corpus by (category, doc_type) and drops groups smaller than
/// `min_size`. A paper keeps whichever of its sets survive; a paper with none
/// left is listed in the report. Throws std::invalid_argument if min_size is 0.
ReferenceSets build_reference_sets(const Corpus& corpus, std::size_t min_size = 100);

/// Scores of the set's members at `year` (cumulative citations), parallel to
/// set.members. For CWTS the values are class fractions p in [0, 1].
/// Throws std::out_of_range for a year outside 1..horizon.
std::vector<double> score_set_members(const ReferenceSet& set, const Corpus& corpus, const ApproachSpec& spec,
                                      int year);

/// score_set_members keyed by paper_id.
std::map<std::string, double> score_paper_set(const ReferenceSet& set, const Corpus& corpus,
                                              const ApproachSpec& spec, int year);

/// Collapses one paper's per-set values: the maximum for InCites (best
/// performance), the mean for everything else including CWTS fractions.
/// Throws std::invalid_argument on an empty list.
double aggregate(std::span<const double> per_set_scores, Approach approach);

}  // namespace citerank
