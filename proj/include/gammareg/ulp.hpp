#pragma once

#include <cstdint>
#include <cstring>
#include <limits>

namespace gammareg {

/// Units-in-last-place distance between two finite doubles (0 when equal,
/// including +0/-0; huge when signs differ materially).
inline std::uint64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  auto rep = [](double v) {
    std::int64_t i;
    std::memcpy(&i, &v, sizeof i);
    return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
  };
  std::int64_t ia = rep(a), ib = rep(b);
  return ia > ib ? static_cast<std::uint64_t>(ia) - static_cast<std::uint64_t>(ib)
                 : static_cast<std::uint64_t>(ib) - static_cast<std::uint64_t>(ia);
}

}  // namespace gammareg
