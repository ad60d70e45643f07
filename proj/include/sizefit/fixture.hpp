#pragma once

#include <cstdint>
#include <string_view>

#include "sizefit/geometry.hpp"
#include "sizefit/segmap.hpp"

namespace sizefit {

/// Synthetic front-facing person. All lengths in pixels; the neck keypoint
/// sits at (neck_x, neck_y) on the shoulder line and the torso occupies
/// rows neck_y .. neck_y + torso_length - 1.
struct FixtureDescriptor {
  int width = 384;
  int height = 512;
  int neck_x = 192;
  int neck_y = 140;
  int shoulder_half_width = 48;
  int torso_length = 200;
  int upper_arm_drop = 90;    // vertical shoulder-to-elbow offset
  int arm_spread = 16;        // horizontal elbow offset beyond the shoulder
  int forearm_length = 80;
  int arm_half_thickness = 7;
  int sleeve_half_thickness = 11;
  double sleeve_fraction = 0.45;  // share of the upper arm covered by the sleeve
  int neck_half_width = 12;
  int neck_height = 16;
  int head_radius = 34;
  int hip_half_width = 30;
  int leg_length = 140;
  bool crossing_arm = false;  // right forearm crosses the torso horizontally
  bool randomize = true;      // jitter the geometry from the seed
  SizeSpec sizes{66.0, 47.0, 73.0, 51.0};
};

/// "default" (arms at the sides) or "crossing-arm". Throws InputError for
/// other names.
FixtureDescriptor fixture_preset(std::string_view name);

struct Fixture {
  SegMap map;
  Pose pose;
  SizeSpec sizes;
  FixtureDescriptor geometry;  // after jitter
};

/// Draws the person described by `descriptor` (jittered from `seed` when
/// randomize is set) with the default palette. The pose matches the drawing
/// exactly: delta(1, 8) equals torso_length and the clothing union bbox is
/// torso_length rows tall. Throws InconsistentDescriptor when the geometry
/// does not fit the canvas or the arm cannot split the torso.
Fixture make_fixture(const FixtureDescriptor& descriptor, std::uint32_t seed);

}  // namespace sizefit
