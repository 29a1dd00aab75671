#pragma once

#include <cstddef>
#include <cstdint>

#include "citerank/model.hpp"

namespace citerank {

/// Knobs for the synthetic corpus.
///
/// Each paper draws a latent citation rate from a lognormal whose log-scale
/// standard deviation is `skew`, scaled by a per-field factor spread over
/// [exp(-field_spread/2), exp(field_spread/2)]. Yearly counts are Poisson
/// around that rate times a rise-and-decay aging curve peaking between years
/// 1 and `max_peak_year`. Papers flagged uncited never receive a citation.
struct SyntheticParams {
  std::size_t fields = 3;
  std::size_t papers_per_field = 200;
  int horizon = 10;
  double mean_rate = 2.0;
  double skew = 1.2;
  double field_spread = 0.0;
  double max_peak_year = 5.0;
  double uncited_share = 0.1;
  /// Share of papers that also carry a second (different) field as category.
  double multi_category_share = 0.0;
  /// Share of papers typed "review" instead of "article".
  double review_share = 0.0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on non-positive sizes, shares outside
  /// [0, 1], or a multi-category share with a single field.
  void validate() const;
};

/// Deterministic for a fixed parameter set (given one standard library).
/// Paper ids are "P" plus a zero-padded running number, categories "F01"...
Corpus generate_synthetic(const SyntheticParams& params);

}  // namespace citerank
