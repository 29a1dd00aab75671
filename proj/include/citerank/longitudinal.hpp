#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citerank/model.hpp"
#include "citerank/refsets.hpp"

namespace citerank {

/// Aggregated per-paper values for every year 1..T under one approach.
/// Rows are the surviving papers in corpus order. Values are scores in
/// [0, 100], or mean class fractions in [0, 1] for CWTS.
class ScoreMatrix {
 public:
  ScoreMatrix(ApproachSpec spec, std::vector<std::string> paper_ids, int years);

  const ApproachSpec& spec() const noexcept { return spec_; }
  int years() const noexcept { return years_; }
  std::size_t rows() const noexcept { return paper_ids_.size(); }
  const std::vector<std::string>& paper_ids() const noexcept { return paper_ids_; }

  std::optional<std::size_t> row_of(std::string_view paper_id) const;

  std::span<const double> year_column(int year) const;
  std::span<double> year_column(int year);

  double at(std::size_t row, int year) const { return year_column(year)[row]; }
  /// Throws std::out_of_range for an unknown paper or year.
  double value(std::string_view paper_id, int year) const;

 private:
  std::size_t column_offset(int year) const;

  ApproachSpec spec_;
  std::vector<std::string> paper_ids_;
  std::unordered_map<std::string, std::size_t> rows_;
  int years_;
  std::vector<double> values_;  // year-major
};

/// Scores every surviving paper in every year and aggregates across its
/// reference sets. Years are computed on up to `threads` workers (0 = one per
/// hardware thread); the result does not depend on the worker count.
/// Throws std::invalid_argument if `sets` is empty.
ScoreMatrix scores_by_year(const Corpus& corpus, std::span<const ReferenceSet> sets, const ApproachSpec& spec,
                           unsigned threads = 0);

/// Rows in the top-x% class at `year`. Score approaches use
/// top_class_members on the aggregated scores; CWTS counts a paper as a member
/// when its mean p is at least 0.5.
std::vector<std::size_t> class_members(const ScoreMatrix& matrix, double x, int year,
                                       BoundaryRule boundary_rule = BoundaryRule::Inclusive);

/// Class size per year (index 0 = year 1). For score approaches this is the
/// member count; for CWTS it is the expected count (sum of mean p), and `x`
/// must equal the matrix's class threshold.
std::vector<double> class_count_series(const ScoreMatrix& matrix, double x,
                                       BoundaryRule boundary_rule = BoundaryRule::Inclusive);

/// CWTS only: number of papers per year whose mean p reaches `cutoff`.
std::vector<double> cwts_threshold_count_series(const ScoreMatrix& matrix, double cutoff = 0.5);

struct PersistenceSeries {
  /// |class(t) ∩ class(final)| per year.
  std::vector<double> counts;
  /// 100 * counts / |class(final)|, or 0 when the final class is empty.
  std::vector<double> percents;
};

PersistenceSeries persistence_series(const ScoreMatrix& matrix, double x,
                                     BoundaryRule boundary_rule = BoundaryRule::Inclusive,
                                     std::optional<int> final_year = std::nullopt);

struct ResearchUnit {
  std::size_t unit_id = 0;
  std::vector<std::string> member_ids;
};

/// Draws `n_samples` units of `size` distinct ids from `pool`, each an
/// independent uniform sample without replacement. Uses mt19937_64 seeded with
/// `seed`, a partial Fisher-Yates shuffle and rejection-debiased modulo
/// reduction, so the draws do not depend on the standard library's
/// distribution implementations. Throws std::invalid_argument when `size`
/// exceeds the pool or is 0.
std::vector<ResearchUnit> sample_units(std::span<const std::string> pool, std::size_t size, std::size_t n_samples,
                                       std::uint64_t seed);

/// Raised when a correlation is undefined because one side is constant.
class DegenerateCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Tie-corrected Spearman correlation: Pearson correlation of average ranks.
/// Throws std::invalid_argument for mismatched or too-short inputs and
/// DegenerateCorrelation when either side has a single distinct value.
double spearman(std::span<const double> a, std::span<const double> b);

/// Mean aggregated value of each unit's members at `year`.
std::vector<double> unit_means(std::span<const ResearchUnit> units, const ScoreMatrix& matrix, int year);

/// Spearman over units of (mean at year) vs (mean at final year), one value
/// per year. Propagates DegenerateCorrelation.
std::vector<double> correlation_series(std::span<const ResearchUnit> units, const ScoreMatrix& matrix,
                                       std::optional<int> final_year = std::nullopt);

/// correlation_series with degenerate years reported as std::nullopt.
std::vector<std::optional<double>> correlation_series_with_gaps(std::span<const ResearchUnit> units,
                                                                const ScoreMatrix& matrix,
                                                                std::optional<int> final_year = std::nullopt);

}  // namespace citerank
