#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sizefit/error.hpp"
#include "sizefit/fixture.hpp"
#include "sizefit/overlap.hpp"
#include "sizefit/resize.hpp"

using namespace sizefit;

namespace {

constexpr Label kBg = 0;
constexpr Label kCloth = 3;
constexpr Label kRightArm = 6;

Region rect_region(int x0, int y0, int x1, int y1) {
  std::vector<Pixel> p;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) p.push_back({x, y});
  return make_region(kCloth, p);
}

Region from_cells(const oracle::CellSet& cells, int dx = 0, int dy = 0) {
  std::vector<Pixel> p;
  for (const auto& [x, y] : cells) p.push_back({x + dx, y + dy});
  return make_region(kCloth, p);
}

}  // namespace

TEST_CASE("closest pair of single pixels") {
  const auto cp = closest_pair(rect_region(0, 0, 0, 0), rect_region(3, 4, 3, 4));
  CHECK(cp.distance == 5.0);
  CHECK(cp.point_a == Pixel{0, 0});
  CHECK(cp.point_b == Pixel{3, 4});
}

TEST_CASE("parallel bars") {
  const Region a = rect_region(0, 0, 2, 9);
  const Region b = rect_region(8, 0, 10, 9);
  const auto cp = closest_pair(a, b);
  CHECK(cp.distance == 6.0);
  CHECK(cp.point_a == Pixel{2, 0});  // topmost row wins the tie
  CHECK(cp.point_b == Pixel{8, 0});
}

TEST_CASE("closest pair agrees with the all-pairs oracle") {
  std::mt19937 rng(61);
  for (int n = 0; n < 100; ++n) {
    const auto ca = oracle::random_blob(rng, 30, 30, 120);
    auto cb = oracle::random_blob(rng, 30, 30, 120);
    for (const auto& c : ca) cb.erase(c);
    if (cb.empty()) continue;
    const Region a = from_cells(ca);
    const Region b = from_cells(cb);
    if (a.empty()) continue;
    const auto expected = oracle::closest_all_pairs(ca, cb);
    const auto cp = closest_pair(a, b);
    CHECK(cp.distance == std::sqrt(static_cast<double>(expected.d2)));
    CHECK(cp.point_a == Pixel{expected.a.first, expected.a.second});
    CHECK(cp.point_b == Pixel{expected.b.first, expected.b.second});
    CHECK(closest_pair(b, a).distance == cp.distance);
  }
}

TEST_CASE("overlapping regions are rejected") {
  CHECK_THROWS_AS(closest_pair(rect_region(0, 0, 5, 5), rect_region(5, 5, 8, 8)), OverlappingRegions);
  CHECK(min_distance(rect_region(0, 0, 5, 5), rect_region(5, 5, 8, 8)) == 0.0);
  CHECK_THROWS_AS(closest_pair(Region{}, rect_region(0, 0, 1, 1)), DegenerateRegion);
}

TEST_CASE("smaller component") {
  CHECK(smaller_component(rect_region(0, 0, 9, 9), rect_region(20, 0, 24, 4)) == 1);
  CHECK(smaller_component(rect_region(0, 0, 1, 1), rect_region(20, 0, 24, 4)) == 0);
  // Equal sizes: the leftmost one counts as smaller.
  CHECK(smaller_component(rect_region(20, 0, 21, 1), rect_region(0, 0, 1, 1)) == 1);
}

namespace {

// Two clothing bars separated by a vertical arm stripe.
SegMap bars_map() {
  SegMap m(120, 60, default_palette(), kBg);
  for (int y = 10; y <= 49; ++y) {
    for (int x = 20; x <= 49; ++x) m.set(x, y, kCloth);
    for (int x = 60; x <= 79; ++x) m.set(x, y, kCloth);
    for (int x = 51; x <= 58; ++x) m.set(x, y, kRightArm);
  }
  return m;
}

}  // namespace

TEST_CASE("unit scale needs no correction") {
  const SegMap m = bars_map();
  const auto comps = extract_regions(m, Role::kClothing);
  REQUIRE(comps.size() == 2);
  const auto before = closest_pair(comps[0], comps[1]);
  const auto out = correct_overlap(m, before, comps);
  CHECK(out.translation == Pixel{0, 0});
  CHECK(out.map == m);
  CHECK(out.distance_after == before.distance);
}

TEST_CASE("bars scaled towards each other are pushed back apart") {
  const SegMap m = bars_map();
  const auto comps = extract_regions(m, Role::kClothing);
  const auto before = closest_pair(comps[0], comps[1]);
  CHECK(before.distance == 11.0);

  SUBCASE("gap narrowed") {
    // Scale horizontally just enough to close most of the gap.
    std::vector<Region> scaled;
    for (const auto& c : comps) scaled.push_back(scale_region(c, 1.3, 1.0, c.centroid, {120, 60}));
    const double narrowed = min_distance(scaled[0], scaled[1]);
    CHECK(narrowed < before.distance - 1.5);
    const auto out = correct_overlap(m, before, scaled);
    CHECK(out.moved == 1);
    CHECK(std::abs(out.distance_after - before.distance) <= 1.5);
    CHECK(oracle::label_cells(out.map, kRightArm) == oracle::label_cells(m, kRightArm));
    // The bigger bar stays where scaling put it.
    for (const auto& p : scaled[0].pixels)
      if (m.role_at(p.x, p.y) != Role::kRightArm) CHECK(out.map.at(p.x, p.y) == kCloth);
  }
  SUBCASE("components collide") {
    std::vector<Region> scaled;
    for (const auto& c : comps) scaled.push_back(scale_region(c, 1.8, 1.2, c.centroid, {120, 60}));
    CHECK(min_distance(scaled[0], scaled[1]) == 0.0);
    const auto out = correct_overlap(m, before, scaled);
    CHECK(out.distance_scaled == 0.0);
    CHECK(out.distance_after >= 0.0);
    CHECK(std::abs(out.distance_after - before.distance) <= 1.5);
    CHECK(oracle::label_cells(out.map, kRightArm) == oracle::label_cells(m, kRightArm));
  }
}

TEST_CASE("both bars doubled about their centroids") {
  SegMap m(200, 80, default_palette(), kBg);
  for (int y = 20; y <= 59; ++y) {
    for (int x = 60; x <= 69; ++x) m.set(x, y, kCloth);
    for (int x = 80; x <= 87; ++x) m.set(x, y, kCloth);
  }
  const auto comps = extract_regions(m, Role::kClothing);
  const auto before = closest_pair(comps[0], comps[1]);
  CHECK(before.distance == 11.0);
  std::vector<Region> scaled;
  for (const auto& c : comps) scaled.push_back(scale_region(c, 2.0, 1.0, c.centroid, {200, 80}));
  const auto out = correct_overlap(m, before, scaled);
  const auto after = make_region(kCloth, out.moved_region.pixels);
  CHECK(std::abs(closest_pair(scaled[0], after).distance - before.distance) <= 1.5);
  CHECK(out.translation.y == 0);
  CHECK(out.translation.x > 0);
}

TEST_CASE("crossing-arm fixtures keep their separation") {
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    const Fixture f = make_fixture(fixture_preset("crossing-arm"), seed);
    const auto comps = extract_regions(f.map, Role::kClothing);
    REQUIRE(comps.size() == 2);
    const auto before = closest_pair(comps[0], comps[1]);
    std::vector<Region> scaled;
    for (const auto& c : comps)
      scaled.push_back(scale_region(c, 1.3, 1.4, c.centroid, {f.map.width(), f.map.height()}));
    const auto out = correct_overlap(f.map, before, scaled);
    CHECK(std::abs(out.distance_after - before.distance) <= 1.5);
    CHECK(oracle::label_cells(out.map, 5) == oracle::label_cells(f.map, 5));
    CHECK(oracle::label_cells(out.map, 6) == oracle::label_cells(f.map, 6));
  }
}

TEST_CASE("component count must be two") {
  const SegMap m = bars_map();
  const auto comps = extract_regions(m, Role::kClothing);
  const auto before = closest_pair(comps[0], comps[1]);
  CHECK_THROWS_AS(correct_overlap(m, before, {comps[0]}), ComponentCountMismatch);
  CHECK_THROWS_AS(correct_overlap(m, before, {comps[0], comps[1], comps[1]}), ComponentCountMismatch);
}
