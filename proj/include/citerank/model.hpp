#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citerank {

/// Raised when an input record breaks a corpus invariant. Carries the
/// offending paper id (empty when the problem is not tied to one record).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string paper_id, const std::string& what)
      : std::invalid_argument(what), paper_id_(std::move(paper_id)) {}

  const std::string& paper_id() const noexcept { return paper_id_; }

 private:
  std::string paper_id_;
};

enum class Approach { PLow, PInc, Hazen, InCites, SCImago, P100, Cwts };
enum class Direction { Ascending, Descending };
enum class TieRule { Average, Min, Max };
enum class BoundaryRule { Inclusive, Strict };

std::string_view to_string(Approach approach);
std::string_view to_string(TieRule rule);
std::string_view to_string(BoundaryRule rule);

/// Parses the upper-case CLI names (P_LOW, P_INC, HAZEN, INCITES, SCIMAGO,
/// P100, CWTS). Throws std::invalid_argument on anything else.
Approach parse_approach(std::string_view name);
TieRule parse_tie_rule(std::string_view name);
BoundaryRule parse_boundary_rule(std::string_view name);

/// True for approaches that produce a 0..100 score per paper; false for CWTS,
/// which produces a class-membership fraction.
constexpr bool is_score_approach(Approach a) noexcept { return a != Approach::Cwts; }

/// Which approach to run and with which conventions.
///
/// Use ApproachSpec::make() to get the per-approach defaults: zero_rule is on
/// for the plain percentile formulas and SCImago, and off where it is either
/// built into the method (InCites) or emerges from it (P100).
struct ApproachSpec {
  Approach approach = Approach::Hazen;
  TieRule tie_rule = TieRule::Average;
  bool zero_rule = true;
  BoundaryRule boundary_rule = BoundaryRule::Inclusive;
  /// Top-x% class threshold; only meaningful (and required) for CWTS.
  std::optional<double> class_threshold;

  static ApproachSpec make(Approach approach, std::optional<double> class_threshold = std::nullopt);

  /// Throws std::invalid_argument when CWTS lacks a threshold in (0, 100].
  void validate() const;

  bool operator==(const ApproachSpec&) const = default;
};

struct PaperRecord {
  std::string paper_id;
  std::string doc_type;
  std::vector<std::string> subject_categories;
  std::optional<double> journal_metric;
  /// Index 0 is the publication year ("year 1").
  std::vector<std::int64_t> yearly_citations;

  bool operator==(const PaperRecord&) const = default;
};

/// An immutable, validated collection of papers sharing one horizon.
class Corpus {
 public:
  const std::vector<PaperRecord>& papers() const noexcept { return papers_; }
  int horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept { return papers_.size(); }

  const PaperRecord& operator[](std::size_t i) const { return papers_[i]; }

  /// Position of `paper_id` in papers(), if present.
  std::optional<std::size_t> index_of(std::string_view paper_id) const;

  bool operator==(const Corpus& other) const {
    return horizon_ == other.horizon_ && papers_ == other.papers_;
  }

 private:
  friend Corpus validate_corpus(std::vector<PaperRecord> records, int horizon);

  std::vector<PaperRecord> papers_;
  int horizon_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Checks every record and returns the corpus. Errors name the offending
/// paper: duplicate ids, empty or duplicated categories, negative counts,
/// negative journal metric, and citation vectors whose length is not `horizon`.
Corpus validate_corpus(std::vector<PaperRecord> records, int horizon);

/// Citations received from publication through year `year` (1-based,
/// inclusive). Throws std::out_of_range unless 1 <= year <= horizon.
std::int64_t cumulative_citations(const PaperRecord& paper, int year);

}  // namespace citerank
