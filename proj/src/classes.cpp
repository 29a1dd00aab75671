#include "citerank/classes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace citerank {

void require_class_threshold(double x) {
  if (!(x > 0.0 && x <= 100.0)) {
    throw std::invalid_argument("class threshold " + std::to_string(x) + " outside (0, 100]");
  }
}

std::vector<std::size_t> top_class_members(std::span<const double> scores, double x, BoundaryRule boundary_rule) {
  require_class_threshold(x);
  const double cutoff = 100.0 - x;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool in = boundary_rule == BoundaryRule::Inclusive ? scores[i] >= cutoff - kBoundaryTolerance
                                                             : scores[i] > cutoff + kBoundaryTolerance;
    if (in) members.push_back(i);
  }
  return members;
}

std::vector<ClassFraction> cwts_fractions(std::span<const std::int64_t> citations, double x) {
  require_class_threshold(x);
  if (citations.empty()) throw std::invalid_argument("cwts_fractions: empty input");

  const std::size_t n = citations.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return citations[a] > citations[b]; });

  double slots = static_cast<double>(n) * x / 100.0;
  // x = 100*k/n rarely multiplies back to exactly k.
  if (std::abs(slots - std::round(slots)) < kBoundaryTolerance) slots = std::round(slots);
  std::vector<ClassFraction> fractions(n, ClassFraction{0.0, x});
  std::size_t above = 0;
  while (above < n) {
    std::size_t end = above + 1;
    while (end < n && citations[order[end]] == citations[order[above]]) ++end;
    const double group = static_cast<double>(end - above);
    const double p = std::clamp((slots - static_cast<double>(above)) / group, 0.0, 1.0);
    for (std::size_t k = above; k < end; ++k) fractions[order[k]].p = p;
    if (p < 1.0) {
      // Everything below the boundary group stays at 0.
      break;
    }
    above = end;
  }
  return fractions;
}

double expected_top_count(std::span<const ClassFraction> fractions) {
  double total = 0.0;
  for (const auto& f : fractions) total += f.p;
  return total;
}

}  // namespace citerank
