#include "citerank/longitudinal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "citerank/classes.hpp"
#include "citerank/ranking.hpp"

namespace citerank {

ScoreMatrix::ScoreMatrix(ApproachSpec spec, std::vector<std::string> paper_ids, int years)
    : spec_(std::move(spec)), paper_ids_(std::move(paper_ids)), years_(years) {
  if (years_ < 1) throw std::invalid_argument("ScoreMatrix needs at least one year");
  rows_.reserve(paper_ids_.size());
  for (std::size_t i = 0; i < paper_ids_.size(); ++i) {
    if (!rows_.emplace(paper_ids_[i], i).second) {
      throw std::invalid_argument("ScoreMatrix: duplicate paper_id '" + paper_ids_[i] + "'");
    }
  }
  values_.assign(paper_ids_.size() * static_cast<std::size_t>(years_), 0.0);
}

std::optional<std::size_t> ScoreMatrix::row_of(std::string_view paper_id) const {
  auto it = rows_.find(std::string(paper_id));
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

std::size_t ScoreMatrix::column_offset(int year) const {
  if (year < 1 || year > years_) {
    throw std::out_of_range("year " + std::to_string(year) + " outside 1.." + std::to_string(years_));
  }
  return static_cast<std::size_t>(year - 1) * paper_ids_.size();
}

std::span<const double> ScoreMatrix::year_column(int year) const {
  return {values_.data() + column_offset(year), paper_ids_.size()};
}

std::span<double> ScoreMatrix::year_column(int year) {
  return {values_.data() + column_offset(year), paper_ids_.size()};
}

double ScoreMatrix::value(std::string_view paper_id, int year) const {
  const auto row = row_of(paper_id);
  if (!row) throw std::out_of_range("paper '" + std::string(paper_id) + "' is not in the score matrix");
  return at(*row, year);
}

namespace {

// Per-row list of slots into the flat buffer holding every set's member
// scores for one year, in set order.
struct MembershipIndex {
  std::vector<std::size_t> set_offsets;
  std::vector<std::size_t> row_begin;
  std::vector<std::size_t> slots;
};

MembershipIndex index_memberships(std::span<const ReferenceSet> sets, const std::vector<std::size_t>& surviving,
                                  std::size_t corpus_size) {
  std::vector<std::size_t> row_of_paper(corpus_size, 0);
  for (std::size_t r = 0; r < surviving.size(); ++r) row_of_paper[surviving[r]] = r;

  MembershipIndex idx;
  std::vector<std::size_t> count(surviving.size(), 0);
  std::size_t total = 0;
  for (const auto& set : sets) {
    idx.set_offsets.push_back(total);
    for (std::size_t p : set.members) ++count[row_of_paper[p]];
    total += set.members.size();
  }
  idx.row_begin.assign(surviving.size() + 1, 0);
  for (std::size_t r = 0; r < surviving.size(); ++r) idx.row_begin[r + 1] = idx.row_begin[r] + count[r];
  idx.slots.resize(total);
  std::vector<std::size_t> fill(idx.row_begin.begin(), idx.row_begin.end() - 1);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t k = 0; k < sets[s].members.size(); ++k) {
      idx.slots[fill[row_of_paper[sets[s].members[k]]]++] = idx.set_offsets[s] + k;
    }
  }
  return idx;
}

}  // namespace

ScoreMatrix scores_by_year(const Corpus& corpus, std::span<const ReferenceSet> sets, const ApproachSpec& spec,
                           unsigned threads) {
  if (sets.empty()) throw std::invalid_argument("scores_by_year: no surviving reference sets");
  spec.validate();

  std::vector<std::size_t> surviving;
  for (const auto& set : sets) surviving.insert(surviving.end(), set.members.begin(), set.members.end());
  std::sort(surviving.begin(), surviving.end());
  surviving.erase(std::unique(surviving.begin(), surviving.end()), surviving.end());

  std::vector<std::string> ids;
  ids.reserve(surviving.size());
  for (std::size_t p : surviving) ids.push_back(corpus[p].paper_id);
  ScoreMatrix matrix(spec, std::move(ids), corpus.horizon());

  const auto index = index_memberships(sets, surviving, corpus.size());

  auto fill_year = [&](int year) {
    std::vector<double> buffer(index.slots.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto values = score_set_members(sets[s], corpus, spec, year);
      std::copy(values.begin(), values.end(), buffer.begin() + static_cast<std::ptrdiff_t>(index.set_offsets[s]));
    }
    auto column = matrix.year_column(year);
    std::vector<double> per_set;
    for (std::size_t r = 0; r < column.size(); ++r) {
      per_set.clear();
      for (std::size_t k = index.row_begin[r]; k < index.row_begin[r + 1]; ++k) per_set.push_back(buffer[index.slots[k]]);
      column[r] = aggregate(per_set, spec.approach);
    }
  };

  const int years = corpus.horizon();
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(years));
  if (workers <= 1) {
    for (int t = 1; t <= years; ++t) fill_year(t);
    return matrix;
  }

  std::atomic<int> next{1};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int t = next++; t <= years; t = next++) {
          try {
            fill_year(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return matrix;
}

std::vector<std::size_t> class_members(const ScoreMatrix& matrix, double x, int year, BoundaryRule boundary_rule) {
  require_class_threshold(x);
  const auto column = matrix.year_column(year);
  if (is_score_approach(matrix.spec().approach)) return top_class_members(column, x, boundary_rule);
  std::vector<std::size_t> members;
  for (std::size_t r = 0; r < column.size(); ++r) {
    if (column[r] >= 0.5) members.push_back(r);
  }
  return members;
}

namespace {

void require_matching_cwts_threshold(const ScoreMatrix& matrix, double x) {
  if (matrix.spec().approach == Approach::Cwts && matrix.spec().class_threshold != x) {
    throw std::invalid_argument("CWTS matrix was built for x=" + std::to_string(*matrix.spec().class_threshold) +
                                ", asked for x=" + std::to_string(x));
  }
}

}  // namespace

std::vector<double> class_count_series(const ScoreMatrix& matrix, double x, BoundaryRule boundary_rule) {
  require_class_threshold(x);
  require_matching_cwts_threshold(matrix, x);
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(matrix.years()));
  for (int t = 1; t <= matrix.years(); ++t) {
    if (matrix.spec().approach == Approach::Cwts) {
      const auto column = matrix.year_column(t);
      series.push_back(std::accumulate(column.begin(), column.end(), 0.0));
    } else {
      series.push_back(static_cast<double>(top_class_members(matrix.year_column(t), x, boundary_rule).size()));
    }
  }
  return series;
}

std::vector<double> cwts_threshold_count_series(const ScoreMatrix& matrix, double cutoff) {
  if (matrix.spec().approach != Approach::Cwts) {
    throw std::invalid_argument("cwts_threshold_count_series needs a CWTS matrix");
  }
  std::vector<double> series;
  for (int t = 1; t <= matrix.years(); ++t) {
    const auto column = matrix.year_column(t);
    series.push_back(static_cast<double>(
        std::count_if(column.begin(), column.end(), [cutoff](double p) { return p >= cutoff; })));
  }
  return series;
}

PersistenceSeries persistence_series(const ScoreMatrix& matrix, double x, BoundaryRule boundary_rule,
                                     std::optional<int> final_year) {
  require_matching_cwts_threshold(matrix, x);
  const int last = final_year.value_or(matrix.years());
  const auto final_members = class_members(matrix, x, last, boundary_rule);
  std::vector<char> in_final(matrix.rows(), 0);
  for (std::size_t r : final_members) in_final[r] = 1;

  PersistenceSeries out;
  for (int t = 1; t <= matrix.years(); ++t) {
    const auto members = class_members(matrix, x, t, boundary_rule);
    const auto kept = std::count_if(members.begin(), members.end(), [&](std::size_t r) { return in_final[r] != 0; });
    out.counts.push_back(static_cast<double>(kept));
    out.percents.push_back(final_members.empty()
                               ? 0.0
                               : 100.0 * static_cast<double>(kept) / static_cast<double>(final_members.size()));
  }
  return out;
}

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % range;
  }
}

}  // namespace

std::vector<ResearchUnit> sample_units(std::span<const std::string> pool, std::size_t size, std::size_t n_samples,
                                       std::uint64_t seed) {
  if (size == 0) throw std::invalid_argument("unit size must be positive");
  if (size > pool.size()) {
    throw std::invalid_argument("unit size " + std::to_string(size) + " exceeds the " + std::to_string(pool.size()) +
                                " available papers");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(pool.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  std::vector<ResearchUnit> units;
  units.reserve(n_samples);
  for (std::size_t u = 0; u < n_samples; ++u) {
    for (std::size_t k = 0; k < size; ++k) {
      const auto j = k + static_cast<std::size_t>(bounded(rng, perm.size() - k));
      std::swap(perm[k], perm[j]);
    }
    ResearchUnit unit;
    unit.unit_id = u;
    unit.member_ids.reserve(size);
    for (std::size_t k = 0; k < size; ++k) unit.member_ids.push_back(pool[perm[k]]);
    units.push_back(std::move(unit));
  }
  return units;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: inputs differ in length");
  if (a.size() < 2) throw std::invalid_argument("spearman: need at least two observations");

  const auto ra = rank_ties(a, Direction::Ascending, TieRule::Average);
  const auto rb = rank_ties(b, Direction::Ascending, TieRule::Average);
  // Average ranks always have mean (n + 1) / 2.
  const double mean = 0.5 * static_cast<double>(a.size() + 1);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw DegenerateCorrelation("spearman: a constant input has no rank correlation");
  if (ra == rb) return 1.0;
  return std::clamp(sab / (std::sqrt(saa) * std::sqrt(sbb)), -1.0, 1.0);
}

namespace {

std::vector<std::vector<std::size_t>> resolve_units(std::span<const ResearchUnit> units, const ScoreMatrix& matrix) {
  std::vector<std::vector<std::size_t>> rows;
  rows.reserve(units.size());
  for (const auto& unit : units) {
    if (unit.member_ids.empty()) throw std::invalid_argument("research unit " + std::to_string(unit.unit_id) + " is empty");
    auto& r = rows.emplace_back();
    r.reserve(unit.member_ids.size());
    for (const auto& id : unit.member_ids) {
      const auto row = matrix.row_of(id);
      if (!row) throw std::out_of_range("unit member '" + id + "' is not in the score matrix");
      r.push_back(*row);
    }
  }
  return rows;
}

std::vector<double> means_at(const std::vector<std::vector<std::size_t>>& rows, const ScoreMatrix& matrix, int year) {
  const auto column = matrix.year_column(year);
  std::vector<double> means;
  means.reserve(rows.size());
  for (const auto& r : rows) {
    double sum = 0.0;
    for (std::size_t row : r) sum += column[row];
    means.push_back(sum / static_cast<double>(r.size()));
  }
  return means;
}

}  // namespace

std::vector<double> unit_means(std::span<const ResearchUnit> units, const ScoreMatrix& matrix, int year) {
  return means_at(resolve_units(units, matrix), matrix, year);
}

std::vector<std::optional<double>> correlation_series_with_gaps(std::span<const ResearchUnit> units,
                                                                const ScoreMatrix& matrix,
                                                                std::optional<int> final_year) {
  if (units.size() < 2) throw std::invalid_argument("correlation_series needs at least two units");
  const auto rows = resolve_units(units, matrix);
  const int last = final_year.value_or(matrix.years());
  const auto final_means = means_at(rows, matrix, last);

  std::vector<std::optional<double>> series;
  for (int t = 1; t <= matrix.years(); ++t) {
    try {
      series.emplace_back(spearman(means_at(rows, matrix, t), final_means));
    } catch (const DegenerateCorrelation&) {
      series.emplace_back(std::nullopt);
    }
  }
  return series;
}

std::vector<double> correlation_series(std::span<const ResearchUnit> units, const ScoreMatrix& matrix,
                                       std::optional<int> final_year) {
  const auto gaps = correlation_series_with_gaps(units, matrix, final_year);
  std::vector<double> series;
  for (std::size_t t = 0; t < gaps.size(); ++t) {
    if (!gaps[t]) {
      throw DegenerateCorrelation("correlation undefined in year " + std::to_string(t + 1) +
                                  ": unit means are constant");
    }
    series.push_back(*gaps[t]);
  }
  return series;
}

}  // namespace citerank
