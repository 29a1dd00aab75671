#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "citerank/model.hpp"

namespace citerank {

/// Base formula applied to an ascending rank i out of n.
enum class PercentileFormula {
  Low,        ///< 100 * (i - 1) / n
  Inclusive,  ///< 100 * i / n  (also InCites before complementing)
  Hazen,      ///< 100 * (i - 0.5) / n
};

/// 1-based ranks after sorting `values` in `direction`. Tied groups share the
/// mean, minimum or maximum of the positions they occupy. Throws
/// std::invalid_argument on empty input.
std::vector<double> rank_ties(std::span<const double> values, Direction direction,
                              TieRule tie_rule = TieRule::Average);

/// Percentile scores in [0, 100], aligned to input order. With `zero_rule`,
/// uncited papers are forced to 0 whatever the formula gives them.
std::vector<double> percentile(std::span<const std::int64_t> citations, PercentileFormula formula,
                               TieRule tie_rule = TieRule::Average, bool zero_rule = true);

/// InCites convention: descending sort, maximum rank for ties, percentile
/// 100 * i / n, reported as its complement 100 - p. Uncited papers share the
/// last descending rank n and therefore always score 0.
std::vector<double> incites_rank(std::span<const std::int64_t> citations);

/// SCImago convention: ascending lexicographic sort on (citations, key), where
/// the key is a journal metric such as SJR2; 100 * i / n on the resulting
/// ranks; ties left after both keys are collapsed with `tie_rule`.
/// Throws std::invalid_argument when the spans differ in length or are empty.
std::vector<double> scimago_rank(std::span<const std::int64_t> citations,
                                 std::span<const double> secondary_keys,
                                 TieRule tie_rule = TieRule::Average, bool zero_rule = true);

/// P100: each paper gets 100 * j / j_max where j indexes its citation value
/// among the sorted distinct values 0..j_max. A set with a single distinct
/// value scores 0 throughout.
std::vector<double> p100_rank(std::span<const std::int64_t> citations);

/// Dispatches to the formula selected by `spec`. `secondary_keys` is consulted
/// only for SCImago (an empty span means every key is 0). CWTS is not a score
/// approach; asking for it throws std::invalid_argument.
std::vector<double> score(std::span<const std::int64_t> citations,
                          std::span<const double> secondary_keys, const ApproachSpec& spec);

}  // namespace citerank
