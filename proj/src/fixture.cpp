#include "sizefit/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sizefit/error.hpp"

namespace sizefit {

namespace {

// std::uniform_int_distribution is implementation-defined; this keeps
// fixtures identical across standard libraries.
int jitter(std::mt19937& rng, int amplitude) {
  const auto span = static_cast<std::uint32_t>(2 * amplitude + 1);
  return static_cast<int>(rng() % span) - amplitude;
}

double segment_distance(double px, double py, Point2 a, Point2 b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - a.x) * vx + (py - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (a.x + t * vx), py - (a.y + t * vy));
}

class Canvas {
 public:
  explicit Canvas(SegMap& map) : map_(map) {}

  void rect(int x0, int y0, int x1, int y1, Label label) {
    for (int y = std::max(0, y0); y <= std::min(map_.height() - 1, y1); ++y) {
      for (int x = std::max(0, x0); x <= std::min(map_.width() - 1, x1); ++x) map_.set(x, y, label);
    }
  }

  // Pixels within `radius` of segment ab, optionally only rows >= min_y.
  void capsule(Point2 a, Point2 b, double radius, Label label, int min_y = 0) {
    const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) - radius));
    const int x1 = static_cast<int>(std::ceil(std::max(a.x, b.x) + radius));
    const int y0 = std::max(min_y, static_cast<int>(std::floor(std::min(a.y, b.y) - radius)));
    const int y1 = static_cast<int>(std::ceil(std::max(a.y, b.y) + radius));
    for (int y = std::max(0, y0); y <= std::min(map_.height() - 1, y1); ++y) {
      for (int x = std::max(0, x0); x <= std::min(map_.width() - 1, x1); ++x) {
        if (segment_distance(x, y, a, b) <= radius) map_.set(x, y, label);
      }
    }
  }

 private:
  SegMap& map_;
};

void check(bool ok, const char* what) {
  if (!ok) throw InconsistentDescriptor(std::string("fixture descriptor: ") + what);
}

}  // namespace

FixtureDescriptor fixture_preset(std::string_view name) {
  FixtureDescriptor d;
  if (name == "default") return d;
  if (name == "crossing-arm") {
    d.crossing_arm = true;
    return d;
  }
  throw InputError("unknown fixture preset \"" + std::string(name) + "\"");
}

Fixture make_fixture(const FixtureDescriptor& descriptor, std::uint32_t seed) {
  FixtureDescriptor g = descriptor;
  if (g.randomize) {
    std::mt19937 rng(seed);
    g.neck_x += jitter(rng, 8);
    g.neck_y += jitter(rng, 6);
    g.shoulder_half_width += jitter(rng, 6);
    g.torso_length += jitter(rng, 16);
    g.upper_arm_drop += jitter(rng, 8);
    g.arm_spread += jitter(rng, 4);
    g.arm_half_thickness += jitter(rng, 1);
    g.head_radius += jitter(rng, 3);
  }

  check(g.width > 0 && g.height > 0, "canvas must be non-empty");
  check(g.shoulder_half_width > 0 && g.torso_length > 1 && g.upper_arm_drop > 0 &&
            g.forearm_length > 0 && g.arm_half_thickness > 0 && g.sleeve_half_thickness > 0 &&
            g.neck_half_width > 0 && g.neck_height > 0 && g.head_radius > 0 &&
            g.hip_half_width > 0 && g.leg_length > 0 && g.arm_spread >= 0,
        "lengths must be positive");
  check(g.sleeve_fraction > 0.0 && g.sleeve_fraction < 1.0, "sleeve_fraction must be in (0,1)");
  check(g.neck_y - g.neck_height - 2 * g.head_radius >= 0, "head does not fit above the shoulders");
  check(g.neck_y + g.torso_length + g.leg_length <= g.height, "legs do not fit below the torso");
  check(g.neck_x - g.shoulder_half_width - g.arm_spread - g.arm_half_thickness - g.sleeve_half_thickness > 0 &&
            g.neck_x + g.shoulder_half_width + g.arm_spread + g.arm_spread / 2 +
                    g.arm_half_thickness + g.sleeve_half_thickness + 12 <
                g.width,
        "arms do not fit the canvas width");
  check(g.hip_half_width < g.shoulder_half_width, "hips must be narrower than the shoulders");
  check(g.head_radius > g.neck_half_width, "head must be wider than the neck");
  if (g.crossing_arm) {
    check(g.upper_arm_drop - g.arm_half_thickness > g.sleeve_half_thickness + 2 &&
              g.upper_arm_drop + g.arm_half_thickness < g.torso_length - 2,
          "crossing forearm must split the torso into two parts");
  } else {
    check(g.neck_y + g.upper_arm_drop + g.forearm_length + g.arm_half_thickness < g.height,
          "forearms do not fit the canvas");
  }
  g.sizes.validate();

  const Palette palette = default_palette();
  auto label = [&](Role role) { return *palette.first_label_for(role); };
  SegMap map(g.width, g.height, palette, palette.background_label());
  Canvas canvas(map);

  const double cx = g.neck_x;
  const double ny = g.neck_y;
  const double sw = g.shoulder_half_width;
  const Point2 neck{cx, ny};
  const Point2 r_shoulder{cx - sw, ny};
  const Point2 l_shoulder{cx + sw, ny};
  const Point2 r_elbow{cx - sw - g.arm_spread, ny + g.upper_arm_drop};
  const Point2 l_elbow{cx + sw + g.arm_spread, ny + g.upper_arm_drop};
  const Point2 r_wrist = g.crossing_arm
                             ? Point2{cx + sw + 12, r_elbow.y}
                             : Point2{r_elbow.x - g.arm_spread / 2, r_elbow.y + g.forearm_length};
  const Point2 l_wrist{l_elbow.x + g.arm_spread / 2, l_elbow.y + g.forearm_length};
  const double hip_y = ny + g.torso_length;
  const double face_y = ny - g.neck_height - g.head_radius;
  auto along = [](Point2 a, Point2 b, double f) {
    return Point2{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
  };
  const Point2 r_sleeve_end = along(r_shoulder, r_elbow, g.sleeve_fraction);
  const Point2 l_sleeve_end = along(l_shoulder, l_elbow, g.sleeve_fraction);

  canvas.rect(g.neck_x - g.hip_half_width - 6, static_cast<int>(hip_y), g.neck_x + g.hip_half_width + 6,
              static_cast<int>(hip_y) + g.leg_length - 1, label(Role::kLowerBody));

  const Label cloth = label(Role::kClothing);
  canvas.rect(g.neck_x - g.shoulder_half_width, g.neck_y, g.neck_x + g.shoulder_half_width,
              g.neck_y + g.torso_length - 1, cloth);
  canvas.capsule(r_shoulder, r_sleeve_end, g.sleeve_half_thickness, cloth, g.neck_y);
  canvas.capsule(l_shoulder, l_sleeve_end, g.sleeve_half_thickness, cloth, g.neck_y);

  const Label r_arm = label(Role::kRightArm);
  const Label l_arm = label(Role::kLeftArm);
  canvas.capsule(r_sleeve_end, r_elbow, g.arm_half_thickness, r_arm);
  canvas.capsule(r_elbow, r_wrist, g.arm_half_thickness, r_arm);
  canvas.capsule(l_sleeve_end, l_elbow, g.arm_half_thickness, l_arm);
  canvas.capsule(l_elbow, l_wrist, g.arm_half_thickness, l_arm);

  canvas.rect(g.neck_x - g.neck_half_width, g.neck_y - g.neck_height, g.neck_x + g.neck_half_width,
              g.neck_y - 1, label(Role::kSkinNeck));
  canvas.capsule({cx, face_y}, {cx, face_y}, g.head_radius, label(Role::kFace));
  // Hair: the top third of the head disk.
  const int hair_limit = static_cast<int>(face_y) - g.head_radius / 3;
  for (int y = std::max(0, static_cast<int>(face_y) - g.head_radius); y < hair_limit; ++y) {
    for (int x = g.neck_x - g.head_radius; x <= g.neck_x + g.head_radius; ++x) {
      if (map.in_bounds(x, y) && map.role_at(x, y) == Role::kFace) map.set(x, y, label(Role::kHair));
    }
  }

  constexpr double kSeen = 0.9;
  std::array<Keypoint, body25::kCount> kp{};
  auto put = [&](int index, Point2 p) { kp[static_cast<std::size_t>(index)] = {p.x, p.y, kSeen}; };
  put(body25::kNose, {cx, face_y});
  put(body25::kNeck, neck);
  put(body25::kRShoulder, r_shoulder);
  put(body25::kRElbow, r_elbow);
  put(body25::kRWrist, r_wrist);
  put(body25::kLShoulder, l_shoulder);
  put(body25::kLElbow, l_elbow);
  put(body25::kLWrist, l_wrist);
  put(body25::kMidHip, {cx, hip_y});
  put(body25::kRHip, {cx - g.hip_half_width, hip_y});
  put(body25::kLHip, {cx + g.hip_half_width, hip_y});
  put(body25::kRKnee, {cx - g.hip_half_width, hip_y + g.leg_length / 2});
  put(body25::kLKnee, {cx + g.hip_half_width, hip_y + g.leg_length / 2});
  put(body25::kRAnkle, {cx - g.hip_half_width, hip_y + g.leg_length - 1});
  put(body25::kLAnkle, {cx + g.hip_half_width, hip_y + g.leg_length - 1});
  put(15, {cx - g.head_radius / 3, face_y - g.head_radius / 4});
  put(16, {cx + g.head_radius / 3, face_y - g.head_radius / 4});
  put(17, {cx - g.head_radius, face_y});
  put(18, {cx + g.head_radius, face_y});
  // Feet (19..24) are outside the drawing and stay undetected.

  return {std::move(map), Pose(kp), g.sizes, g};
}

}  // namespace sizefit
