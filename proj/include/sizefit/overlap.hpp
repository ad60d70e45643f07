#pragma once

#include <string>
#include <vector>

#include "sizefit/segmap.hpp"

namespace sizefit {

struct ClosestPair {
  Pixel point_a;
  Pixel point_b;
  double distance = 0.0;
};

/// Minimum-distance pixel pair between two disjoint regions, searched over
/// their contours. Ties go to the lexicographically smallest
/// (a.y, a.x, b.y, b.x). Throws OverlappingRegions if the pixel sets
/// intersect and DegenerateRegion if either is empty.
ClosestPair closest_pair(const Region& a, const Region& b);

/// Minimum distance between two pixel sets, 0 when they intersect.
double min_distance(const Region& a, const Region& b);

struct OverlapCorrection {
  SegMap map;
  Pixel translation;              // applied to the moved component
  int moved = 1;                  // 0 or 1, index into the regions passed in
  double distance_before = 0.0;   // pre-scale closest distance
  double distance_scaled = 0.0;   // after scaling, before correction (0 if they collide)
  double distance_after = 0.0;    // after correction
  bool clipped = false;
  std::vector<std::string> warnings;
  Region moved_region;            // the moved component at its final position
};

/// Which of two components gets moved: fewer pixels, ties to the leftmost
/// bounding box.
int smaller_component(const Region& a, const Region& b);

/// Restores the pre-scale separation between two scaled clothing
/// components. `before` must be closest_pair(A, B) on the unscaled
/// components and `scaled` holds (A', B') in the same order. The smaller
/// component is translated by whole pixels so that the offset between the
/// closest points matches the pre-scale one, then refined until the
/// separation is within `tolerance` of before.distance. The result map is
/// `map` with its clothing layer replaced by A' and the translated B'
/// (composite_clothing precedence); arms and other labels stay put.
OverlapCorrection correct_overlap(const SegMap& map, const ClosestPair& before,
                                  const std::vector<Region>& scaled, double tolerance = 1.5);

}  // namespace sizefit
