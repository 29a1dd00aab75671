#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "citerank/model.hpp"

namespace citerank {

/// Membership of one paper in a pre-specified top-x% class, as a
/// probability. Vectors of these are aligned with the citation input.
struct ClassFraction {
  double p = 0.0;
  double x = 0.0;
};

/// Scores within this distance of the 100 - x cutoff count as on it, so
/// 100*2/3 sits exactly on the top-33.33...% boundary despite rounding.
inline constexpr double kBoundaryTolerance = 1e-9;

/// Indices whose score clears 100 - x: `>=` for Inclusive, `>` for Strict,
/// both up to kBoundaryTolerance. Throws std::invalid_argument unless 0 < x <= 100.
std::vector<std::size_t> top_class_members(std::span<const double> scores, double x,
                                           BoundaryRule boundary_rule = BoundaryRule::Inclusive);

/// Fractional attribution to the top-x% class. The class holds n*x/100
/// slots; papers strictly above the boundary value take a whole slot, the
/// papers tied at the boundary value split what is left equally, the rest
/// get 0. The fractions always sum to n*x/100.
std::vector<ClassFraction> cwts_fractions(std::span<const std::int64_t> citations, double x);

/// Expected size of the class: the sum of p.
double expected_top_count(std::span<const ClassFraction> fractions);

void require_class_threshold(double x);

}  // namespace citerank
