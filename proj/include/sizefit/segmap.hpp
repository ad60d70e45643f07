#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sizefit/geometry.hpp"

namespace sizefit {

using Label = std::uint8_t;

enum class Role {
  kBackground,
  kClothing,
  kLeftArm,
  kRightArm,
  kSkinNeck,
  kFace,
  kHair,
  kLowerBody,
  kOther,
};

std::string_view role_name(Role role);
std::optional<Role> parse_role(std::string_view name);

/// Compositing precedence: a label of higher rank is never overwritten by
/// one of lower rank. background < other < lower_body < clothing < arms <
/// skin_neck < face < hair.
int compositing_rank(Role role);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct PaletteEntry {
  Label id = 0;
  Role role = Role::kOther;
  Rgb color;
  friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

/// Label-id to (role, color) table. Exactly one clothing and one background
/// label; ids and colors are unique. Entries are kept sorted by id.
class Palette {
 public:
  Palette() = default;
  explicit Palette(std::vector<PaletteEntry> entries);

  const std::vector<PaletteEntry>& entries() const { return entries_; }
  bool contains(Label id) const { return lookup_[id] >= 0; }
  Role role_of(Label id) const;
  const PaletteEntry& entry(Label id) const;

  /// All labels carrying `role`, ascending.
  std::vector<Label> labels_for(Role role) const;
  std::optional<Label> first_label_for(Role role) const;

  Label clothing_label() const { return clothing_; }
  Label background_label() const { return background_; }

  friend bool operator==(const Palette& a, const Palette& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<PaletteEntry> entries_;
  std::array<int, 256> lookup_ = filled_lookup();
  Label clothing_ = 0;
  Label background_ = 0;

  static constexpr std::array<int, 256> filled_lookup() {
    std::array<int, 256> a{};
    for (auto& v : a) v = -1;
    return a;
  }
};

/// Labels roughly following the human-parsing layout used by try-on models.
Palette default_palette();

struct Pixel {
  int x = 0;
  int y = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Row-major ordering (y first, then x).
inline bool row_major_less(const Pixel& a, const Pixel& b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

struct BBox {
  int min_x = 0;
  int min_y = 0;
  int max_x = -1;
  int max_y = -1;

  bool empty() const { return max_x < min_x || max_y < min_y; }
  int width() const { return empty() ? 0 : max_x - min_x + 1; }
  int height() const { return empty() ? 0 : max_y - min_y + 1; }
  bool contains(int x, int y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
  void extend(int x, int y);
  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Dense per-pixel labels plus the palette that gives them meaning.
class SegMap {
 public:
  SegMap() = default;
  SegMap(int width, int height, Palette palette, Label fill);
  SegMap(int width, int height, std::vector<Label> labels, Palette palette);

  int width() const { return width_; }
  int height() const { return height_; }
  const Palette& palette() const { return palette_; }
  const std::vector<Label>& labels() const { return labels_; }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  Label at(int x, int y) const { return labels_[index(x, y)]; }
  Role role_at(int x, int y) const { return palette_.role_of(at(x, y)); }
  void set(int x, int y, Label label) { labels_[index(x, y)] = label; }

  std::size_t count(Label label) const;

  friend bool operator==(const SegMap& a, const SegMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.labels_ == b.labels_ &&
           a.palette_ == b.palette_;
  }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Label> labels_;
  Palette palette_;
};

/// Membership bitmap of a pixel set over its bounding box.
class PixelMask {
 public:
  PixelMask() = default;
  explicit PixelMask(std::span<const Pixel> pixels);

  bool contains(int x, int y) const {
    if (!box_.contains(x, y)) return false;
    return bits_[static_cast<std::size_t>(y - box_.min_y) * static_cast<std::size_t>(box_.width()) +
                 static_cast<std::size_t>(x - box_.min_x)] != 0;
  }
  bool contains(const Pixel& p) const { return contains(p.x, p.y); }
  const BBox& bbox() const { return box_; }

 private:
  BBox box_;
  std::vector<std::uint8_t> bits_;
};

/// One labelled pixel set with its derived geometry. Pixels are stored in
/// row-major order without duplicates.
struct Region {
  Label label = 0;
  std::vector<Pixel> pixels;
  std::vector<Pixel> contour;
  Point2 centroid;
  BBox bbox;

  std::size_t size() const { return pixels.size(); }
  bool empty() const { return pixels.empty(); }
};

/// Builds a Region from an arbitrary pixel list (duplicates removed).
Region make_region(Label label, std::vector<Pixel> pixels);

/// Pixels of `pixels` with at least one 4-neighbour outside the set, in
/// row-major order.
std::vector<Pixel> contour_of(std::span<const Pixel> pixels);
inline std::vector<Pixel> contour_of(const Region& region) { return contour_of(region.pixels); }

/// 8-connected components of every label with `role`, largest first; ties
/// go to the topmost, then leftmost, bounding-box corner.
std::vector<Region> extract_regions(const SegMap& map, Role role);

/// Sets in-bounds `pixels` to `label`; out-of-bounds pixels are ignored.
/// Throws UnknownLabel if the palette has no such label.
SegMap write_region(const SegMap& map, std::span<const Pixel> pixels, Label label);

/// Same as write_region; `fill` is the label left behind.
SegMap erase_region(const SegMap& map, std::span<const Pixel> pixels, Label fill);

/// Relabels vacated pixels in place. Each 8-connected group of `vacated`
/// becomes skin_neck if any of its pixels is 8-adjacent to an existing
/// skin_neck pixel outside the group, otherwise background.
void fill_vacated(SegMap& map, std::span<const Pixel> vacated);

/// Rewrites the clothing layer of `map`. Pixels of `clothing` are labelled
/// clothing wherever the current label ranks below clothing; old clothing
/// pixels not covered by the new layer are relabelled with fill_vacated.
SegMap composite_clothing(const SegMap& map, std::span<const Region> clothing);

}  // namespace sizefit
