#include "sizefit/collar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sizefit/error.hpp"

namespace sizefit {

BBox CollarRect::pixel_bounds(int width, int height) const {
  BBox b;
  b.min_x = std::max(0, static_cast<int>(std::ceil(left())));
  b.max_x = std::min(width - 1, static_cast<int>(std::floor(right())));
  b.min_y = std::max(0, static_cast<int>(std::ceil(top())));
  b.max_y = std::min(height - 1, static_cast<int>(std::floor(bottom())));
  return b;
}

CollarRect collar_rect(const Pose& pose, const VirtualSize& vs, const CollarConfig& config,
                       double threshold) {
  vs.validate();
  if (!(config.sx_frac > 0.0 && config.sy_frac > 0.0)) {
    throw InvalidSpec("collar rectangle fractions must be positive");
  }
  return {pose.require(body25::kNeck, threshold), config.sx_frac * vs.w_tilde,
          config.sy_frac * vs.h_tilde};
}

ErosionResult erode_clothing(const SegMap& map, const BBox& eligible, int iterations) {
  if (iterations < 1) throw std::invalid_argument("erosion needs at least one iteration");
  const Label cloth = map.palette().clothing_label();
  if (map.count(cloth) == 0) throw EmptyClothing("map has no clothing pixels to erode");

  ErosionResult result{map, 0};
  const BBox box{std::max(0, eligible.min_x), std::max(0, eligible.min_y),
                 std::min(map.width() - 1, eligible.max_x), std::min(map.height() - 1, eligible.max_y)};
  if (box.empty()) return result;

  const int w = map.width();
  std::vector<std::uint8_t> mask(map.labels().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = map.labels()[i] == cloth;
  auto in_mask = [&](int x, int y) {
    return map.in_bounds(x, y) &&
           mask[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
  };

  std::vector<Pixel> removed;
  std::vector<Pixel> step;
  for (int it = 0; it < iterations; ++it) {
    step.clear();
    for (int y = box.min_y; y <= box.max_y; ++y) {
      for (int x = box.min_x; x <= box.max_x; ++x) {
        if (!in_mask(x, y)) continue;
        bool keep = true;
        for (int dy = -1; dy <= 1 && keep; ++dy) {
          for (int dx = -1; dx <= 1 && keep; ++dx) keep = in_mask(x + dx, y + dy);
        }
        if (!keep) step.push_back({x, y});
      }
    }
    if (step.empty()) break;
    for (const auto& p : step) {
      mask[static_cast<std::size_t>(p.y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(p.x)] = 0;
    }
    removed.insert(removed.end(), step.begin(), step.end());
  }

  fill_vacated(result.map, removed);
  result.removed = removed.size();
  return result;
}

ErosionResult erode_collar(const SegMap& map, const CollarRect& rect, int iterations) {
  return erode_clothing(map, rect.pixel_bounds(map.width(), map.height()), iterations);
}

}  // namespace sizefit
