#pragma once

#include <string_view>
#include <vector>

#include "sizefit/geometry.hpp"
#include "sizefit/segmap.hpp"

namespace sizefit {

/// How the horizontal factor is derived from the virtual size.
///   kAlpha:    s_h = (w_tilde + delta(2,3) + delta(5,6)) / alpha
///   kShoulder: s_h = w_tilde / delta(2,5)
enum class HorizontalRule { kAlpha, kShoulder };

std::string_view horizontal_rule_name(HorizontalRule rule);

struct ScalePlan {
  double s_h = 1.0;
  double s_v = 1.0;
  /// Union-bbox height of the clothing components the plan was made from.
  int current_height = 0;
  /// One anchor (centroid) per clothing component, in extract_regions order.
  std::vector<Point2> anchors;
};

struct Extent {
  int width = 0;
  int height = 0;
};

/// Factors shared by every clothing component: s_v maps the current union
/// height onto h_tilde; s_h follows `rule`.
ScalePlan plan_scale(const SegMap& map, const Pose& pose, const VirtualSize& vs,
                     HorizontalRule rule = HorizontalRule::kAlpha,
                     double threshold = kDefaultConfidenceThreshold);

/// Same, for components that were already extracted.
ScalePlan plan_scale(const std::vector<Region>& clothing, const Pose& pose, const VirtualSize& vs,
                     HorizontalRule rule = HorizontalRule::kAlpha,
                     double threshold = kDefaultConfidenceThreshold);

/// Scales `region` about `anchor` by inverse nearest-neighbour mapping and
/// clips it to `bounds`. Output pixel (X, Y) is set when its preimage
/// anchor + ((X - ax) / s_h, (Y - ay) / s_v), rounded half away from zero,
/// lies in the source. When enlarging (both factors >= 1, not both 1)
/// single-pixel holes are closed. Output area is monotone in the factors
/// only when both lie on the same side of 1. Throws DegenerateRegion if
/// nothing survives clipping.
Region scale_region(const Region& region, double s_h, double s_v, Point2 anchor, Extent bounds);

}  // namespace sizefit
