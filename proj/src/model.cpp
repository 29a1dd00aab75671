#include "citerank/model.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace citerank {

namespace {

struct ApproachName {
  Approach approach;
  std::string_view name;
};

constexpr ApproachName kApproachNames[] = {
    {Approach::PLow, "P_LOW"},       {Approach::PInc, "P_INC"},   {Approach::Hazen, "HAZEN"},
    {Approach::InCites, "INCITES"},  {Approach::SCImago, "SCIMAGO"}, {Approach::P100, "P100"},
    {Approach::Cwts, "CWTS"},
};

}  // namespace

std::string_view to_string(Approach approach) {
  for (const auto& entry : kApproachNames) {
    if (entry.approach == approach) return entry.name;
  }
  return "UNKNOWN";
}

std::string_view to_string(TieRule rule) {
  switch (rule) {
    case TieRule::Average: return "AVERAGE";
    case TieRule::Min: return "MIN";
    case TieRule::Max: return "MAX";
  }
  return "UNKNOWN";
}

std::string_view to_string(BoundaryRule rule) {
  return rule == BoundaryRule::Inclusive ? "INCLUSIVE" : "STRICT";
}

Approach parse_approach(std::string_view name) {
  for (const auto& entry : kApproachNames) {
    if (entry.name == name) return entry.approach;
  }
  throw std::invalid_argument("unknown approach '" + std::string(name) + "'");
}

TieRule parse_tie_rule(std::string_view name) {
  if (name == "AVERAGE") return TieRule::Average;
  if (name == "MIN") return TieRule::Min;
  if (name == "MAX") return TieRule::Max;
  throw std::invalid_argument("unknown tie rule '" + std::string(name) + "'");
}

BoundaryRule parse_boundary_rule(std::string_view name) {
  if (name == "INCLUSIVE") return BoundaryRule::Inclusive;
  if (name == "STRICT") return BoundaryRule::Strict;
  throw std::invalid_argument("unknown boundary rule '" + std::string(name) + "'");
}

ApproachSpec ApproachSpec::make(Approach approach, std::optional<double> class_threshold) {
  ApproachSpec spec;
  spec.approach = approach;
  spec.zero_rule = approach == Approach::PLow || approach == Approach::PInc ||
                   approach == Approach::Hazen || approach == Approach::SCImago;
  spec.class_threshold = class_threshold;
  return spec;
}

void ApproachSpec::validate() const {
  if (approach != Approach::Cwts) return;
  if (!class_threshold || !(*class_threshold > 0.0 && *class_threshold <= 100.0)) {
    throw std::invalid_argument("CWTS requires a class threshold in (0, 100]");
  }
}

std::optional<std::size_t> Corpus::index_of(std::string_view paper_id) const {
  auto it = index_.find(std::string(paper_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Corpus validate_corpus(std::vector<PaperRecord> records, int horizon) {
  if (records.empty()) throw ValidationError("", "corpus has no records");
  if (horizon < 1) throw ValidationError("", "horizon must be at least 1");

  Corpus corpus;
  corpus.horizon_ = horizon;
  corpus.index_.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const PaperRecord& rec = records[i];
    if (rec.paper_id.empty()) throw ValidationError("", "record " + std::to_string(i) + " has an empty paper_id");
    if (!corpus.index_.emplace(rec.paper_id, i).second) {
      throw ValidationError(rec.paper_id, "duplicate paper_id '" + rec.paper_id + "'");
    }
    if (rec.subject_categories.empty()) {
      throw ValidationError(rec.paper_id, "paper '" + rec.paper_id + "' has no subject categories");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& cat : rec.subject_categories) {
      if (!seen.insert(cat).second) {
        throw ValidationError(rec.paper_id,
                              "paper '" + rec.paper_id + "' lists category '" + cat + "' twice");
      }
    }
    if (rec.journal_metric && !(*rec.journal_metric >= 0.0)) {
      throw ValidationError(rec.paper_id, "paper '" + rec.paper_id + "' has a negative journal metric");
    }
    if (rec.yearly_citations.size() != static_cast<std::size_t>(horizon)) {
      throw ValidationError(rec.paper_id, "paper '" + rec.paper_id + "' has " +
                                              std::to_string(rec.yearly_citations.size()) +
                                              " yearly counts, horizon is " + std::to_string(horizon));
    }
    if (std::any_of(rec.yearly_citations.begin(), rec.yearly_citations.end(),
                    [](std::int64_t c) { return c < 0; })) {
      throw ValidationError(rec.paper_id, "paper '" + rec.paper_id + "' has a negative citation count");
    }
  }
  corpus.papers_ = std::move(records);
  return corpus;
}

std::int64_t cumulative_citations(const PaperRecord& paper, int year) {
  if (year < 1 || static_cast<std::size_t>(year) > paper.yearly_citations.size()) {
    throw std::out_of_range("year " + std::to_string(year) + " outside 1.." +
                            std::to_string(paper.yearly_citations.size()));
  }
  return std::accumulate(paper.yearly_citations.begin(), paper.yearly_citations.begin() + year,
                         std::int64_t{0});
}

}  // namespace citerank
