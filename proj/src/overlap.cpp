#include "sizefit/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>

#include "sizefit/error.hpp"

namespace sizefit {

namespace {

struct Candidate {
  std::int64_t d2 = std::numeric_limits<std::int64_t>::max();
  Pixel a;
  Pixel b;

  auto key() const { return std::tuple(d2, a.y, a.x, b.y, b.x); }
};

bool intersects(const PixelMask& mask, const Region& other) {
  if (!mask.bbox().empty() && !other.bbox.empty()) {
    const BBox& m = mask.bbox();
    const BBox& o = other.bbox;
    if (o.max_x < m.min_x || o.min_x > m.max_x || o.max_y < m.min_y || o.min_y > m.max_y) {
      return false;
    }
  }
  return std::any_of(other.pixels.begin(), other.pixels.end(),
                     [&](const Pixel& p) { return mask.contains(p); });
}

Region translated(const Region& r, Pixel t) {
  Region out = r;
  for (auto& p : out.pixels) p = {p.x + t.x, p.y + t.y};
  for (auto& p : out.contour) p = {p.x + t.x, p.y + t.y};
  out.centroid = {r.centroid.x + t.x, r.centroid.y + t.y};
  if (!r.bbox.empty()) {
    out.bbox = {r.bbox.min_x + t.x, r.bbox.min_y + t.y, r.bbox.max_x + t.x, r.bbox.max_y + t.y};
  }
  return out;
}

ClosestPair scan(const std::vector<Pixel>& contour_a, const std::vector<Pixel>& contour_b) {
  std::vector<Pixel> by_x = contour_b;
  std::sort(by_x.begin(), by_x.end(),
            [](const Pixel& p, const Pixel& q) { return p.x != q.x ? p.x < q.x : p.y < q.y; });

  Candidate best;
  auto consider = [&](const Pixel& a, const Pixel& b) {
    const std::int64_t dx = a.x - b.x;
    const std::int64_t dy = a.y - b.y;
    Candidate c{dx * dx + dy * dy, a, b};
    if (c.key() < best.key()) best = c;
  };
  for (const auto& a : contour_a) {
    const auto mid = std::lower_bound(by_x.begin(), by_x.end(), a.x,
                                      [](const Pixel& p, int x) { return p.x < x; });
    // Columns further than sqrt(best) cannot win; equality is kept for ties.
    for (auto it = mid; it != by_x.end(); ++it) {
      const std::int64_t dx = it->x - a.x;
      if (dx * dx > best.d2) break;
      consider(a, *it);
    }
    for (auto it = mid; it != by_x.begin();) {
      --it;
      const std::int64_t dx = a.x - it->x;
      if (dx * dx > best.d2) break;
      consider(a, *it);
    }
  }
  return {best.a, best.b, std::sqrt(static_cast<double>(best.d2))};
}

}  // namespace

ClosestPair closest_pair(const Region& a, const Region& b) {
  if (a.empty() || b.empty()) throw DegenerateRegion("closest pair needs two non-empty regions");
  if (intersects(PixelMask(a.pixels), b)) throw OverlappingRegions("regions share pixels");
  return scan(a.contour, b.contour);
}

double min_distance(const Region& a, const Region& b) {
  if (a.empty() || b.empty()) throw DegenerateRegion("distance needs two non-empty regions");
  if (intersects(PixelMask(a.pixels), b)) return 0.0;
  return scan(a.contour, b.contour).distance;
}

int smaller_component(const Region& a, const Region& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? 0 : 1;
  return b.bbox.min_x < a.bbox.min_x ? 1 : 0;
}

OverlapCorrection correct_overlap(const SegMap& map, const ClosestPair& before,
                                  const std::vector<Region>& scaled, double tolerance) {
  if (scaled.size() != 2) throw ComponentCountMismatch(scaled.size());
  const int moved = smaller_component(scaled[0], scaled[1]);
  const Region& fixed = scaled[static_cast<std::size_t>(1 - moved)];
  const double target = before.distance;

  // Offset from the fixed component's closest point to the moved one's.
  Pixel want{before.point_b.x - before.point_a.x, before.point_b.y - before.point_a.y};
  if (moved == 0) want = {-want.x, -want.y};
  const double norm = std::hypot(want.x, want.y);
  if (!(norm > 0.0)) throw DegenerateRegion("pre-scale components touch");
  const Point2 dir{want.x / norm, want.y / norm};

  OverlapCorrection out;
  out.moved = moved;
  out.distance_before = target;
  out.distance_scaled = min_distance(scaled[0], scaled[1]);

  const PixelMask fixed_mask(fixed.pixels);
  const Region& start = scaled[static_cast<std::size_t>(moved)];
  const int reach = map.width() + map.height();
  auto step = [&](int k) {
    return Pixel{static_cast<int>(std::round(k * dir.x)), static_cast<int>(std::round(k * dir.y))};
  };
  // Separation after translating the moved component by `t`; -1 if they
  // intersect.
  auto separation = [&](Pixel t) {
    const Region r = translated(start, t);
    if (intersects(fixed_mask, r)) return -1.0;
    return scan(fixed.contour, r.contour).distance;
  };

  Pixel t{0, 0};
  // Colliding components are first pushed apart along the pre-scale offset.
  if (separation(t) < 0.0) {
    for (int k = 1; k <= reach; ++k) {
      if (separation(step(k)) >= 0.0) {
        t = step(k);
        break;
      }
    }
    if (separation(t) < 0.0) throw ProcessingError("could not separate clothing components");
  }

  // Match the closest-point offset to the pre-scale one.
  {
    const Region r = translated(start, t);
    const ClosestPair now = scan(fixed.contour, r.contour);
    const Pixel offset{now.point_b.x - now.point_a.x, now.point_b.y - now.point_a.y};
    const Pixel candidate{t.x + want.x - offset.x, t.y + want.y - offset.y};
    if (separation(candidate) >= 0.0) t = candidate;
  }

  // Refine along the pre-scale direction when other parts came closer.
  double d = separation(t);
  if (std::abs(d - target) > tolerance) {
    const Pixel base = t;
    Pixel best_t = t;
    double best_err = d < 0.0 ? std::numeric_limits<double>::infinity() : std::abs(d - target);
    const int sign = (d < target) ? 1 : -1;
    for (int k = 1; k <= reach; ++k) {
      const Pixel s = step(sign * k);
      const Pixel cand{base.x + s.x, base.y + s.y};
      const double dk = separation(cand);
      if (dk < 0.0) {
        if (sign < 0) break;
        continue;
      }
      const double err = std::abs(dk - target);
      if (err < best_err) {
        best_err = err;
        best_t = cand;
      }
      if (err <= tolerance) break;
      if (sign > 0 && dk > target + tolerance) break;
      if (sign < 0 && dk < target - tolerance) break;
    }
    t = best_t;
  }

  Region placed = translated(start, t);
  std::vector<Pixel> kept;
  kept.reserve(placed.pixels.size());
  for (const auto& p : placed.pixels) {
    if (map.in_bounds(p.x, p.y)) kept.push_back(p);
  }
  if (kept.empty()) throw DegenerateRegion("translated component left the map");
  if (kept.size() != placed.pixels.size()) {
    out.clipped = true;
    out.warnings.push_back("translated clothing component was clipped at the map border");
    placed = make_region(placed.label, std::move(kept));
  }

  out.translation = t;
  out.distance_after = min_distance(fixed, placed);
  if (std::abs(out.distance_after - target) > tolerance) {
    out.warnings.push_back("clothing separation could not be restored within tolerance");
  }
  std::vector<Region> layer;
  layer.push_back(fixed);
  layer.push_back(placed);
  out.map = composite_clothing(map, layer);
  out.moved_region = std::move(placed);
  return out;
}

}  // namespace sizefit
