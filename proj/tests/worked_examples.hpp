#pragma once

// Worked P100 examples: two small fictitious reference sets with the rank
// rounded rank values next to each citation count.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fixtures {

inline const std::vector<std::int64_t> kExampleA{10, 7, 4, 3, 2, 1, 0};
inline const std::vector<double> kExampleARounded{100, 83, 66.4, 49.8, 33.2, 16.6, 0};

// 17 rows: 130, four times 90, 40, 38, three times 32, 7, three
// times 4, three times 0.
inline const std::vector<std::int64_t> kExampleB{130, 90, 90, 90, 90, 40, 38, 32, 32,
                                                        32,  7,  4,  4,  4,  0,  0,  0};

inline double example_b_rounded(std::int64_t citations) {
  switch (citations) {
    case 130: return 100.0;
    case 90: return 85.8;
    case 40: return 71.5;
    case 38: return 57.2;
    case 32: return 42.9;
    case 7: return 28.6;
    case 4: return 14.3;
    case 0: return 0.0;
    default: throw std::invalid_argument("not an example value");
  }
}

}  // namespace fixtures
