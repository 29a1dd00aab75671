#include "citerank/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace citerank {

namespace {

void require_share(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(fmt::format("{} must lie in [0, 1], got {}", name, v));
}

}  // namespace

void SyntheticParams::validate() const {
  if (fields == 0 || papers_per_field == 0) throw std::invalid_argument("fields and papers_per_field must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (!(mean_rate > 0.0)) throw std::invalid_argument("mean_rate must be positive");
  if (!(skew >= 0.0)) throw std::invalid_argument("skew must be non-negative");
  if (!(field_spread >= 0.0)) throw std::invalid_argument("field_spread must be non-negative");
  if (!(max_peak_year >= 1.0)) throw std::invalid_argument("max_peak_year must be at least 1");
  require_share(uncited_share, "uncited_share");
  require_share(multi_category_share, "multi_category_share");
  require_share(review_share, "review_share");
  if (multi_category_share > 0.0 && fields < 2) {
    throw std::invalid_argument("a second category needs at least two fields");
  }
}

Corpus generate_synthetic(const SyntheticParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  const std::size_t total = params.fields * params.papers_per_field;
  const int width = static_cast<int>(std::to_string(total).size());
  // Lognormal with median exp(mu) chosen so the mean is mean_rate.
  const double mu = std::log(params.mean_rate) - 0.5 * params.skew * params.skew;

  std::vector<PaperRecord> records;
  records.reserve(total);
  for (std::size_t f = 0; f < params.fields; ++f) {
    const double field_pos = params.fields == 1 ? 0.0 : static_cast<double>(f) / static_cast<double>(params.fields - 1) - 0.5;
    const double field_factor = std::exp(params.field_spread * field_pos);
    for (std::size_t k = 0; k < params.papers_per_field; ++k) {
      PaperRecord rec;
      rec.paper_id = fmt::format("P{:0{}}", records.size() + 1, width);
      rec.doc_type = unit(rng) < params.review_share ? "review" : "article";
      rec.subject_categories.push_back(fmt::format("F{:02}", f + 1));
      if (unit(rng) < params.multi_category_share) {
        std::uniform_int_distribution<std::size_t> other(1, params.fields - 1);
        rec.subject_categories.push_back(fmt::format("F{:02}", (f + other(rng)) % params.fields + 1));
      }

      const double z = normal(rng);
      const double rate = field_factor * std::exp(mu + params.skew * z);
      rec.journal_metric = std::round(std::exp(0.5 * z + 0.5 * normal(rng)) * 1000.0) / 1000.0;

      const bool uncited = unit(rng) < params.uncited_share;
      const double peak = 1.0 + (params.max_peak_year - 1.0) * unit(rng);
      rec.yearly_citations.assign(static_cast<std::size_t>(params.horizon), 0);
      for (int t = 1; t <= params.horizon; ++t) {
        const double age = static_cast<double>(t) / peak;
        const double lambda = rate * age * std::exp(1.0 - age);
        std::poisson_distribution<std::int64_t> draw(lambda > 0.0 ? lambda : 1e-12);
        const auto count = draw(rng);
        if (!uncited) rec.yearly_citations[static_cast<std::size_t>(t - 1)] = count;
      }
      records.push_back(std::move(rec));
    }
  }
  return validate_corpus(std::move(records), params.horizon);
}

}  // namespace citerank
