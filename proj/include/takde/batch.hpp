#pragma once

#include <cstdint>
#include <vector>

namespace takde {

// One time stamp worth of scalar observations; the unit of streaming input.
struct Batch {
  std::int64_t t = 0;
  std::vector<double> points;

  std::size_t size() const noexcept { return points.size(); }
};

}  // namespace takde
