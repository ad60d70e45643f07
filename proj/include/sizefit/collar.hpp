#pragma once

#include <cstddef>

#include "sizefit/geometry.hpp"
#include "sizefit/segmap.hpp"

namespace sizefit {

struct CollarConfig {
  double sx_frac = 0.75;  // s_x = sx_frac * w_tilde
  double sy_frac = 0.75;  // s_y = sy_frac * h_tilde
  int iterations = 2;
};

/// Axis-aligned box centred on the neck keypoint, s_x wide and s_y tall.
struct CollarRect {
  Point2 center;
  double s_x = 0.0;
  double s_y = 0.0;

  double left() const { return center.x - s_x / 2.0; }
  double right() const { return center.x + s_x / 2.0; }
  double top() const { return center.y - s_y / 2.0; }
  double bottom() const { return center.y + s_y / 2.0; }

  /// Pixel centres inside the rectangle (edges inclusive), clipped to the
  /// map. May be empty.
  BBox pixel_bounds(int width, int height) const;
};

CollarRect collar_rect(const Pose& pose, const VirtualSize& vs, const CollarConfig& config = {},
                       double threshold = kDefaultConfidenceThreshold);

struct ErosionResult {
  SegMap map;
  std::size_t removed = 0;
};

/// Binary erosion of the clothing mask with a 3x3 square, repeated
/// `iterations` times, where only pixels inside `eligible` may be removed.
/// Pixels outside the map count as non-clothing. Removed pixels are
/// relabelled by fill_vacated. Throws EmptyClothing if the map has no
/// clothing and std::invalid_argument if iterations < 1.
ErosionResult erode_clothing(const SegMap& map, const BBox& eligible, int iterations);

ErosionResult erode_collar(const SegMap& map, const CollarRect& rect, int iterations);

}  // namespace sizefit
