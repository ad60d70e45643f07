#include "sizefit/resize.hpp"

#include <algorithm>
#include <cmath>

#include "sizefit/error.hpp"

namespace sizefit {

std::string_view horizontal_rule_name(HorizontalRule rule) {
  return rule == HorizontalRule::kAlpha ? "alpha" : "shoulder";
}

ScalePlan plan_scale(const SegMap& map, const Pose& pose, const VirtualSize& vs,
                     HorizontalRule rule, double threshold) {
  return plan_scale(extract_regions(map, Role::kClothing), pose, vs, rule, threshold);
}

ScalePlan plan_scale(const std::vector<Region>& clothing, const Pose& pose, const VirtualSize& vs,
                     HorizontalRule rule, double threshold) {
  vs.validate();
  BBox all;
  ScalePlan plan;
  for (const auto& r : clothing) {
    if (r.empty()) continue;
    all.extend(r.bbox.min_x, r.bbox.min_y);
    all.extend(r.bbox.max_x, r.bbox.max_y);
    plan.anchors.push_back(r.centroid);
  }
  plan.current_height = all.height();
  if (plan.current_height == 0) throw DegenerateRegion("clothing has zero vertical extent");

  plan.s_v = vs.h_tilde / plan.current_height;
  if (rule == HorizontalRule::kAlpha) {
    const double sleeves = delta(pose, body25::kRShoulder, body25::kRElbow, threshold) +
                           delta(pose, body25::kLShoulder, body25::kLElbow, threshold);
    plan.s_h = (vs.w_tilde + sleeves) / vs.alpha;
  } else {
    const double shoulders = delta(pose, body25::kRShoulder, body25::kLShoulder, threshold);
    if (!(shoulders > 0.0)) throw NonPositiveScale("shoulder keypoints coincide");
    plan.s_h = vs.w_tilde / shoulders;
  }
  if (!(std::isfinite(plan.s_h) && plan.s_h > 0.0 && std::isfinite(plan.s_v) && plan.s_v > 0.0)) {
    throw NonPositiveScale("scale factors must be positive and finite");
  }
  return plan;
}

Region scale_region(const Region& region, double s_h, double s_v, Point2 anchor, Extent bounds) {
  if (!(std::isfinite(s_h) && s_h > 0.0 && std::isfinite(s_v) && s_v > 0.0)) {
    throw NonPositiveScale("scale factors must be positive and finite");
  }
  if (region.empty()) throw DegenerateRegion("cannot scale an empty region");

  const PixelMask source(region.pixels);
  const BBox& src = region.bbox;
  const int x0 = std::max(0, static_cast<int>(std::floor(anchor.x + s_h * (src.min_x - 0.5 - anchor.x))));
  const int x1 = std::min(bounds.width - 1,
                          static_cast<int>(std::ceil(anchor.x + s_h * (src.max_x + 0.5 - anchor.x))));
  const int y0 = std::max(0, static_cast<int>(std::floor(anchor.y + s_v * (src.min_y - 0.5 - anchor.y))));
  const int y1 = std::min(bounds.height - 1,
                          static_cast<int>(std::ceil(anchor.y + s_v * (src.max_y + 0.5 - anchor.y))));
  if (x1 < x0 || y1 < y0) throw DegenerateRegion("scaled region lies outside the map");

  const int w = x1 - x0 + 1;
  const int h = y1 - y0 + 1;
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  auto cell = [&](int x, int y) -> std::uint8_t& {
    return grid[static_cast<std::size_t>(y - y0) * static_cast<std::size_t>(w) +
                static_cast<std::size_t>(x - x0)];
  };

  // Preimage columns depend only on X and rows only on Y.
  std::vector<int> pre_x(static_cast<std::size_t>(w));
  std::vector<int> pre_y(static_cast<std::size_t>(h));
  for (int x = x0; x <= x1; ++x) {
    pre_x[static_cast<std::size_t>(x - x0)] =
        static_cast<int>(std::round(anchor.x + (x - anchor.x) / s_h));
  }
  for (int y = y0; y <= y1; ++y) {
    pre_y[static_cast<std::size_t>(y - y0)] =
        static_cast<int>(std::round(anchor.y + (y - anchor.y) / s_v));
  }
  for (int y = y0; y <= y1; ++y) {
    const int sy = pre_y[static_cast<std::size_t>(y - y0)];
    for (int x = x0; x <= x1; ++x) {
      if (source.contains(pre_x[static_cast<std::size_t>(x - x0)], sy)) cell(x, y) = 1;
    }
  }

  if (s_h >= 1.0 && s_v >= 1.0 && !(s_h == 1.0 && s_v == 1.0)) {
    std::vector<Pixel> holes;
    for (int y = y0 + 1; y < y1; ++y) {
      for (int x = x0 + 1; x < x1; ++x) {
        if (!cell(x, y) && cell(x - 1, y) && cell(x + 1, y) && cell(x, y - 1) && cell(x, y + 1)) {
          holes.push_back({x, y});
        }
      }
    }
    for (const auto& p : holes) cell(p.x, p.y) = 1;
  }

  std::vector<Pixel> pixels;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (cell(x, y)) pixels.push_back({x, y});
    }
  }
  if (pixels.empty()) throw DegenerateRegion("scaled region is empty after clipping");
  return make_region(region.label, std::move(pixels));
}

}  // namespace sizefit
