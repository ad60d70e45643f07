// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "sizefit/fixture.hpp"
#include "sizefit/pipeline.hpp"
#include "sizefit/segmap_io.hpp"

using namespace sizefit;
namespace fs = std::filesystem;

namespace {

const Tolerances kTol;
constexpr Label kCloth = 3;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Pose random_pose(std::mt19937& rng) {
  std::uniform_real_distribution<double> coord(0.0, 1024.0);
  std::uniform_real_distribution<double> conf(0.3, 1.0);
  std::array<Keypoint, body25::kCount> kp{};
  for (auto& k : kp) k = {coord(rng), coord(rng), conf(rng)};
  return Pose(kp);
}

SizeSpec random_spec(std::mt19937& rng) {
  std::uniform_real_distribution<double> cm(25.0, 95.0);
  return {cm(rng), cm(rng), cm(rng), cm(rng)};
}

// Straight from the formulas, on raw coordinates.
struct Reference {
  double h, w, alpha;
};
Reference reference(const Pose& pose, const SizeSpec& s) {
  const auto& k = pose.keypoints();
  auto d = [&](int i, int j) {
    const double dx = k[static_cast<std::size_t>(i)].x - k[static_cast<std::size_t>(j)].x;
    const double dy = k[static_cast<std::size_t>(i)].y - k[static_cast<std::size_t>(j)].y;
    return std::sqrt(dx * dx + dy * dy);
  };
  return {s.cloth_height_cm / s.person_height_cm * d(1, 8),
          s.cloth_shoulder_cm / s.person_shoulder_cm * d(2, 5), d(2, 5) + d(2, 3) + d(5, 6)};
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

int clothing_height(const SegMap& m) {
  BBox b;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m.at(x, y) == kCloth) b.extend(x, y);
  return b.height();
}

Outcome formula_fidelity() {
  std::mt19937 rng(101);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Pose p = random_pose(rng);
    const SizeSpec s = random_spec(rng);
    const Reference r = reference(p, s);
    worst = std::max({worst, rel(virtual_height(s, p), r.h), rel(virtual_width(s, p), r.w),
                      rel(lateral_extent_alpha(p), r.alpha)});
  }
  const double t = seconds_since(t0);
  return {worst <= kTol.formula_relative && t < 1.0,
          fmt("100 samples, max relative error %.3g, %.3f s", worst, t)};
}

Outcome sizing_outcome() {
  Outcome o;
  double worst_ratio = 0.0;
  double min_same = 1.0;
  const double target = 73.0 / 66.0;
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const Fixture f = make_fixture(fixture_preset(seed % 2 ? "crossing-arm" : "default"), seed);
    const auto grown = process(f.map, f.pose, {66.0, 47.0, 73.0, 51.0});
    const double ratio = static_cast<double>(clothing_height(grown.map)) / clothing_height(f.map);
    worst_ratio = std::max(worst_ratio, std::abs(ratio / target - 1.0));

    const auto same = process(f.map, f.pose, {66.0, 47.0, 66.0, 47.0});
    std::size_t equal = 0;
    for (std::size_t i = 0; i < f.map.labels().size(); ++i) equal += same.map.labels()[i] == f.map.labels()[i];
    min_same = std::min(min_same, static_cast<double>(equal) / static_cast<double>(f.map.labels().size()));
  }
  o.pass = worst_ratio <= kTol.size_ratio && min_same >= kTol.identity_fraction;
  o.detail = fmt("H_p=66 H_c=73: worst height-ratio error %.2f%%; identity: min unchanged %.3f%%",
                 100.0 * worst_ratio, 100.0 * min_same);
  return o;
}

Outcome closest_pair_oracle() {
  std::mt19937 rng(202);
  const auto t0 = Clock::now();
  int mismatches = 0;
  int pairs = 0;
  while (pairs < 200) {
    const int w = 5 + static_cast<int>(rng() % 26);
    const int h = 5 + static_cast<int>(rng() % 26);
    const auto a = oracle::random_blob(rng, w, h, 10 + static_cast<int>(rng() % 200));
    auto b = oracle::random_blob(rng, w, h, 10 + static_cast<int>(rng() % 200));
    for (const auto& c : a) b.erase(c);
    if (b.empty()) continue;
    ++pairs;
    std::vector<Pixel> pa, pb;
    for (const auto& [x, y] : a) pa.push_back({x, y});
    for (const auto& [x, y] : b) pb.push_back({x, y});
    const auto cp = closest_pair(make_region(kCloth, pa), make_region(kCloth, pb));
    const auto want = oracle::closest_all_pairs(a, b);
    if (cp.distance != std::sqrt(static_cast<double>(want.d2)) ||
        cp.point_a != Pixel{want.a.first, want.a.second} ||
        cp.point_b != Pixel{want.b.first, want.b.second}) {
      ++mismatches;
    }
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && t < 10.0, fmt("200 pairs, %.0f mismatches, %.3f s", mismatches, t)};
}

Outcome overlap_invariant() {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> factor(1.1, 1.8);
  double worst = 0.0;
  int arm_changes = 0;
  int skipped = 0;
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const Fixture f = make_fixture(fixture_preset("crossing-arm"), 1000 + seed);
    const auto comps = extract_regions(f.map, Role::kClothing);
    if (comps.size() != 2) {
      ++skipped;
      continue;
    }
    const double sh = factor(rng);
    const double sv = factor(rng);
    std::vector<Region> scaled;
    for (const auto& c : comps) scaled.push_back(scale_region(c, sh, sv, c.centroid, {f.map.width(), f.map.height()}));
    const auto before = closest_pair(comps[0], comps[1]);
    const auto out = correct_overlap(f.map, before, scaled, kTol.distance_px);
    const auto placed = make_region(kCloth, out.moved_region.pixels);
    const Region& fixed = scaled[static_cast<std::size_t>(1 - out.moved)];
    worst = std::max(worst, std::abs(min_distance(fixed, placed) - before.distance));
    for (Role arm : {Role::kLeftArm, Role::kRightArm}) {
      const Label l = *f.map.palette().first_label_for(arm);
      if (oracle::label_cells(out.map, l) != oracle::label_cells(f.map, l)) ++arm_changes;
    }
  }
  return {skipped == 0 && worst <= kTol.distance_px && arm_changes == 0,
          fmt("50 fixtures, worst |D_after - D_before| = %.3f px, arm maps changed: %.0f, bad fixtures: %.0f",
              worst, arm_changes, skipped)};
}

Outcome collar_locality() {
  int outside_changes = 0;
  int monotone_breaks = 0;
  int not_fewer = 0;
  int exceeding = 0;
  for (std::uint32_t seed = 0; seed < 12; ++seed) {
    const Fixture f = make_fixture(fixture_preset(seed % 2 ? "crossing-arm" : "default"), 50 + seed);
    const VirtualSize vs = compute_virtual_size(f.sizes, f.pose);
    const CollarRect rect = collar_rect(f.pose, vs);
    const BBox box = rect.pixel_bounds(f.map.width(), f.map.height());
    std::size_t last = f.map.count(kCloth);
    for (int it = 1; it <= 5; ++it) {
      const auto out = erode_collar(f.map, rect, it);
      for (int y = 0; y < f.map.height(); ++y)
        for (int x = 0; x < f.map.width(); ++x)
          if (!box.contains(x, y) && out.map.at(x, y) != f.map.at(x, y)) ++outside_changes;
      const std::size_t now = out.map.count(kCloth);
      if (now > last) ++monotone_breaks;
      last = now;
    }
    bool beyond = false;
    for (int y = 0; y < f.map.height() && !beyond; ++y)
      for (int x = 0; x < f.map.width() && !beyond; ++x)
        beyond = f.map.at(x, y) == kCloth && !box.contains(x, y);
    if (beyond) {
      ++exceeding;
      const auto confined = erode_collar(f.map, rect, 2);
      const auto full = erode_clothing(f.map, {0, 0, f.map.width() - 1, f.map.height() - 1}, 2);
      if (!(confined.removed < full.removed)) ++not_fewer;
    }
  }
  return {outside_changes == 0 && monotone_breaks == 0 && not_fewer == 0 && exceeding > 0,
          fmt("12 fixtures x 5 iteration counts: %.0f pixels changed outside rect, %.0f monotonicity breaks, "
              "%.0f confinement failures",
              outside_changes, monotone_breaks, not_fewer)};
}

Outcome determinism_round_trip() {
  const fs::path dir = SIZEFIT_TEST_TMP;
  fs::create_directories(dir);
  int differing = 0;
  int lossy = 0;
  int fixtures = 0;
  for (std::uint32_t seed = 0; seed < 8; ++seed) {
    const Fixture f = make_fixture(fixture_preset(seed % 2 ? "crossing-arm" : "default"), 70 + seed);
    ++fixtures;
    save_segmap(f.map, dir / "in.png", dir / "palette.json");
    write_text(dir / "pose.json", pose_to_json(f.pose));
    if (!(load_segmap(dir / "in.png", dir / "palette.json") == f.map)) ++lossy;

    JobConfig job;
    job.segmap = dir / "in.png";
    job.palette = dir / "palette.json";
    job.pose = dir / "pose.json";
    job.sizes = f.sizes;
    job.out = dir / "a.png";
    job.report = dir / "a.json";
    const auto result = run(job);
    job.out = dir / "b.png";
    job.report = dir / "b.json";
    run(job);
    if (read_file(dir / "a.png") != read_file(dir / "b.png") ||
        read_file(dir / "a.json") != read_file(dir / "b.json") ||
        read_file(dir / "a.palette.json") != read_file(dir / "b.palette.json")) {
      ++differing;
    }
    if (!(load_segmap(dir / "a.png", dir / "a.palette.json") == result.map)) ++lossy;
  }
  return {differing == 0 && lossy == 0,
          fmt("%.0f fixtures: %.0f non-identical reruns, %.0f lossy round trips", fixtures, differing, lossy)};
}

Outcome geometry_invariances() {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> offset(-500.0, 500.0);
  std::uniform_real_distribution<double> factor(0.05, 20.0);
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const Pose p = random_pose(rng);
    const SizeSpec s = random_spec(rng);
    const double dx = offset(rng);
    const double dy = offset(rng);
    const double k = factor(rng);
    auto moved = p.keypoints();
    auto scaled = p.keypoints();
    for (std::size_t i = 0; i < moved.size(); ++i) {
      moved[i].x += dx;
      moved[i].y += dy;
      scaled[i].x *= k;
      scaled[i].y *= k;
    }
    const VirtualSize base = compute_virtual_size(s, p);
    const VirtualSize t = compute_virtual_size(s, Pose(moved));
    const VirtualSize sc = compute_virtual_size(s, Pose(scaled));
    worst = std::max({worst, rel(t.h_tilde, base.h_tilde), rel(t.w_tilde, base.w_tilde),
                      rel(t.alpha, base.alpha), rel(sc.h_tilde, k * base.h_tilde),
                      rel(sc.w_tilde, k * base.w_tilde), rel(sc.alpha, k * base.alpha),
                      rel(delta(Pose(moved), 2, 3), delta(p, 2, 3)),
                      rel(delta(Pose(scaled), 2, 3), k * delta(p, 2, 3))});
  }
  return {worst <= kTol.formula_relative, fmt("200 samples, max relative deviation %.3g", worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 formula fidelity", formula_fidelity},
      {"AC2 sizing outcome", sizing_outcome},
      {"AC3 closest-pair oracle equivalence", closest_pair_oracle},
      {"AC4 overlap invariant", overlap_invariant},
      {"AC5 collar locality and monotonicity", collar_locality},
      {"AC6 determinism and round trip", determinism_round_trip},
      {"AC7 geometry invariances", geometry_invariances},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
