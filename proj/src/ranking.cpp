#include "citerank/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace citerank {

namespace {

// Assigns ranks given a permutation `order` that sorts the input and a
// predicate telling whether two inputs tie.
template <typename Tied>
std::vector<double> collapse_ties(const std::vector<std::size_t>& order, TieRule tie_rule, Tied tied) {
  std::vector<double> ranks(order.size());
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() && tied(order[begin], order[end])) ++end;
    // Positions begin+1 .. end (1-based).
    double rank = 0.0;
    switch (tie_rule) {
      case TieRule::Average: rank = 0.5 * static_cast<double>(begin + 1 + end); break;
      case TieRule::Min: rank = static_cast<double>(begin + 1); break;
      case TieRule::Max: rank = static_cast<double>(end); break;
    }
    for (std::size_t k = begin; k < end; ++k) ranks[order[k]] = rank;
    begin = end;
  }
  return ranks;
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

void require_non_empty(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": empty input");
}

std::vector<double> as_doubles(std::span<const std::int64_t> citations) {
  return {citations.begin(), citations.end()};
}

double apply_formula(PercentileFormula formula, double rank, double n) {
  switch (formula) {
    case PercentileFormula::Low: return 100.0 * (rank - 1.0) / n;
    case PercentileFormula::Inclusive: return 100.0 * rank / n;
    case PercentileFormula::Hazen: return 100.0 * (rank - 0.5) / n;
  }
  return 0.0;
}

}  // namespace

std::vector<double> rank_ties(std::span<const double> values, Direction direction, TieRule tie_rule) {
  require_non_empty(values.size(), "rank_ties");
  auto order = identity(values.size());
  if (direction == Direction::Ascending) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  }
  return collapse_ties(order, tie_rule,
                       [&](std::size_t a, std::size_t b) { return values[a] == values[b]; });
}

std::vector<double> percentile(std::span<const std::int64_t> citations, PercentileFormula formula,
                               TieRule tie_rule, bool zero_rule) {
  require_non_empty(citations.size(), "percentile");
  const auto values = as_doubles(citations);
  auto scores = rank_ties(values, Direction::Ascending, tie_rule);
  const double n = static_cast<double>(citations.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = (zero_rule && citations[i] == 0) ? 0.0 : apply_formula(formula, scores[i], n);
  }
  return scores;
}

std::vector<double> incites_rank(std::span<const std::int64_t> citations) {
  require_non_empty(citations.size(), "incites_rank");
  const auto values = as_doubles(citations);
  auto scores = rank_ties(values, Direction::Descending, TieRule::Max);
  const double n = static_cast<double>(citations.size());
  for (double& s : scores) s = 100.0 - 100.0 * s / n;
  return scores;
}

std::vector<double> scimago_rank(std::span<const std::int64_t> citations,
                                 std::span<const double> secondary_keys, TieRule tie_rule, bool zero_rule) {
  require_non_empty(citations.size(), "scimago_rank");
  if (secondary_keys.size() != citations.size()) {
    throw std::invalid_argument("scimago_rank: " + std::to_string(citations.size()) + " citation counts but " +
                                std::to_string(secondary_keys.size()) + " secondary keys");
  }
  auto order = identity(citations.size());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (citations[a] != citations[b]) return citations[a] < citations[b];
    return secondary_keys[a] < secondary_keys[b];
  });
  auto scores = collapse_ties(order, tie_rule, [&](std::size_t a, std::size_t b) {
    return citations[a] == citations[b] && secondary_keys[a] == secondary_keys[b];
  });
  const double n = static_cast<double>(citations.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = (zero_rule && citations[i] == 0) ? 0.0 : 100.0 * scores[i] / n;
  }
  return scores;
}

std::vector<double> p100_rank(std::span<const std::int64_t> citations) {
  require_non_empty(citations.size(), "p100_rank");
  std::vector<std::int64_t> distinct(citations.begin(), citations.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> scores(citations.size(), 0.0);
  if (distinct.size() == 1) return scores;
  const double top = static_cast<double>(distinct.size() - 1);
  for (std::size_t i = 0; i < citations.size(); ++i) {
    const auto pos = std::lower_bound(distinct.begin(), distinct.end(), citations[i]) - distinct.begin();
    scores[i] = 100.0 * static_cast<double>(pos) / top;
  }
  return scores;
}

std::vector<double> score(std::span<const std::int64_t> citations, std::span<const double> secondary_keys,
                          const ApproachSpec& spec) {
  switch (spec.approach) {
    case Approach::PLow: return percentile(citations, PercentileFormula::Low, spec.tie_rule, spec.zero_rule);
    case Approach::PInc: return percentile(citations, PercentileFormula::Inclusive, spec.tie_rule, spec.zero_rule);
    case Approach::Hazen: return percentile(citations, PercentileFormula::Hazen, spec.tie_rule, spec.zero_rule);
    case Approach::InCites: return incites_rank(citations);
    case Approach::SCImago: {
      if (secondary_keys.empty()) {
        const std::vector<double> zeros(citations.size(), 0.0);
        return scimago_rank(citations, zeros, spec.tie_rule, spec.zero_rule);
      }
      return scimago_rank(citations, secondary_keys, spec.tie_rule, spec.zero_rule);
    }
    case Approach::P100: return p100_rank(citations);
    case Approach::Cwts: break;
  }
  throw std::invalid_argument("CWTS yields class fractions, not scores; use cwts_fractions");
}

}  // namespace citerank
