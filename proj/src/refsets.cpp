#include "citerank/refsets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "citerank/classes.hpp"
#include "citerank/ranking.hpp"

namespace citerank {

std::string to_string(const ReferenceSetKey& key) { return key.subject_category + "|" + key.doc_type; }

std::vector<std::size_t> ReferenceSets::surviving_papers() const {
  std::vector<std::size_t> out;
  for (const auto& set : sets) out.insert(out.end(), set.members.begin(), set.members.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReferenceSets build_reference_sets(const Corpus& corpus, std::size_t min_size) {
  if (min_size == 0) throw std::invalid_argument("min_size must be at least 1");

  std::map<ReferenceSetKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& paper = corpus[i];
    for (const auto& category : paper.subject_categories) {
      groups[ReferenceSetKey{category, paper.doc_type}].push_back(i);
    }
  }

  ReferenceSets result;
  std::vector<bool> kept(corpus.size(), false);
  for (auto& [key, members] : groups) {
    if (members.size() < min_size) {
      result.report.dropped_sets.push_back({key, members.size()});
      continue;
    }
    ReferenceSet set;
    set.key = key;
    set.member_ids.reserve(members.size());
    for (std::size_t i : members) {
      set.member_ids.push_back(corpus[i].paper_id);
      kept[i] = true;
    }
    set.members = std::move(members);
    result.sets.push_back(std::move(set));
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (kept[i]) continue;
    result.report.dropped_papers.push_back(
        {corpus[i].paper_id, "every reference set has fewer than " + std::to_string(min_size) + " papers"});
  }
  return result;
}

std::vector<double> score_set_members(const ReferenceSet& set, const Corpus& corpus, const ApproachSpec& spec,
                                      int year) {
  if (year < 1 || year > corpus.horizon()) {
    throw std::out_of_range("year " + std::to_string(year) + " outside 1.." + std::to_string(corpus.horizon()));
  }
  spec.validate();
  std::vector<std::int64_t> citations;
  citations.reserve(set.members.size());
  for (std::size_t i : set.members) citations.push_back(cumulative_citations(corpus[i], year));

  if (spec.approach == Approach::Cwts) {
    const auto fractions = cwts_fractions(citations, *spec.class_threshold);
    std::vector<double> p(fractions.size());
    std::transform(fractions.begin(), fractions.end(), p.begin(), [](const ClassFraction& f) { return f.p; });
    return p;
  }

  std::vector<double> keys;
  if (spec.approach == Approach::SCImago) {
    keys.reserve(set.members.size());
    for (std::size_t i : set.members) keys.push_back(corpus[i].journal_metric.value_or(0.0));
  }
  return score(citations, keys, spec);
}

std::map<std::string, double> score_paper_set(const ReferenceSet& set, const Corpus& corpus,
                                              const ApproachSpec& spec, int year) {
  const auto values = score_set_members(set, corpus, spec, year);
  std::map<std::string, double> out;
  for (std::size_t k = 0; k < values.size(); ++k) out.emplace(set.member_ids[k], values[k]);
  return out;
}

double aggregate(std::span<const double> per_set_scores, Approach approach) {
  if (per_set_scores.empty()) throw std::invalid_argument("aggregate: empty score list");
  if (approach == Approach::InCites) return *std::max_element(per_set_scores.begin(), per_set_scores.end());
  return std::accumulate(per_set_scores.begin(), per_set_scores.end(), 0.0) /
         static_cast<double>(per_set_scores.size());
}

}  // namespace citerank
