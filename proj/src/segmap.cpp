#include "sizefit/segmap.hpp"

#include <algorithm>
#include <set>

#include "sizefit/error.hpp"

namespace sizefit {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 9> kRoleNames = {{
    {Role::kBackground, "background"},
    {Role::kClothing, "clothing"},
    {Role::kLeftArm, "left_arm"},
    {Role::kRightArm, "right_arm"},
    {Role::kSkinNeck, "skin_neck"},
    {Role::kFace, "face"},
    {Role::kHair, "hair"},
    {Role::kLowerBody, "lower_body"},
    {Role::kOther, "other"},
}};

constexpr int kDx8[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy8[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

// Flood fill over a w x h grid of flags, 8-connected. `visit` receives each
// component as a pixel list in discovery order.
template <typename Member, typename Visit>
void for_each_component8(int w, int h, Member&& member, Visit&& visit) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  std::vector<Pixel> stack;
  std::vector<Pixel> component;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto idx = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + x;
      if (seen[idx] || !member(x, y)) continue;
      seen[idx] = 1;
      stack.push_back({x, y});
      component.clear();
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        component.push_back(p);
        for (int k = 0; k < 8; ++k) {
          const int nx = p.x + kDx8[k];
          const int ny = p.y + kDy8[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const auto nidx = static_cast<std::size_t>(ny) * static_cast<std::size_t>(w) + nx;
          if (seen[nidx] || !member(nx, ny)) continue;
          seen[nidx] = 1;
          stack.push_back({nx, ny});
        }
      }
      visit(component);
    }
  }
}

}  // namespace

std::string_view role_name(Role role) {
  for (const auto& [r, n] : kRoleNames) {
    if (r == role) return n;
  }
  return "other";
}

std::optional<Role> parse_role(std::string_view name) {
  for (const auto& [r, n] : kRoleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

int compositing_rank(Role role) {
  switch (role) {
    case Role::kBackground: return 0;
    case Role::kOther: return 1;
    case Role::kLowerBody: return 2;
    case Role::kClothing: return 3;
    case Role::kLeftArm:
    case Role::kRightArm: return 4;
    case Role::kSkinNeck: return 5;
    case Role::kFace: return 6;
    case Role::kHair: return 7;
  }
  return 0;
}

Palette::Palette(std::vector<PaletteEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const PaletteEntry& a, const PaletteEntry& b) { return a.id < b.id; });
  int clothing = 0;
  int background = 0;
  std::set<std::array<std::uint8_t, 3>> colors;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (lookup_[e.id] >= 0) {
      throw FormatError("palette label id " + std::to_string(e.id) + " is duplicated");
    }
    if (!colors.insert({e.color.r, e.color.g, e.color.b}).second) {
      throw FormatError("palette color of label " + std::to_string(e.id) + " is duplicated");
    }
    lookup_[e.id] = static_cast<int>(i);
    if (e.role == Role::kClothing) {
      ++clothing;
      clothing_ = e.id;
    } else if (e.role == Role::kBackground) {
      ++background;
      background_ = e.id;
    }
  }
  if (clothing != 1) throw FormatError("palette must have exactly one clothing label");
  if (background != 1) throw FormatError("palette must have exactly one background label");
}

const PaletteEntry& Palette::entry(Label id) const {
  if (!contains(id)) throw UnknownLabel("label " + std::to_string(id) + " is not in the palette");
  return entries_[static_cast<std::size_t>(lookup_[id])];
}

Role Palette::role_of(Label id) const { return entry(id).role; }

std::vector<Label> Palette::labels_for(Role role) const {
  std::vector<Label> out;
  for (const auto& e : entries_) {
    if (e.role == role) out.push_back(e.id);
  }
  return out;
}

std::optional<Label> Palette::first_label_for(Role role) const {
  for (const auto& e : entries_) {
    if (e.role == role) return e.id;
  }
  return std::nullopt;
}

Palette default_palette() {
  return Palette({
      {0, Role::kBackground, {0, 0, 0}},
      {1, Role::kHair, {254, 0, 0}},
      {2, Role::kFace, {0, 0, 254}},
      {3, Role::kClothing, {254, 85, 0}},
      {4, Role::kLowerBody, {0, 128, 0}},
      {5, Role::kLeftArm, {51, 169, 220}},
      {6, Role::kRightArm, {0, 254, 254}},
      {7, Role::kSkinNeck, {85, 51, 0}},
      {8, Role::kOther, {169, 254, 85}},
  });
}

void BBox::extend(int x, int y) {
  if (empty()) {
    *this = {x, y, x, y};
    return;
  }
  min_x = std::min(min_x, x);
  min_y = std::min(min_y, y);
  max_x = std::max(max_x, x);
  max_y = std::max(max_y, y);
}

SegMap::SegMap(int width, int height, Palette palette, Label fill)
    : width_(width), height_(height), palette_(std::move(palette)) {
  if (width < 0 || height < 0) throw FormatError("segmentation map size must be non-negative");
  if (!palette_.contains(fill)) {
    throw UnknownLabel("label " + std::to_string(fill) + " is not in the palette");
  }
  labels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

SegMap::SegMap(int width, int height, std::vector<Label> labels, Palette palette)
    : width_(width), height_(height), labels_(std::move(labels)), palette_(std::move(palette)) {
  if (width < 0 || height < 0) throw FormatError("segmentation map size must be non-negative");
  if (labels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw FormatError("label grid size does not match width x height");
  }
  for (Label l : labels_) {
    if (!palette_.contains(l)) {
      throw UnknownLabel("label " + std::to_string(l) + " in the map is not in the palette");
    }
  }
}

std::size_t SegMap::count(Label label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

PixelMask::PixelMask(std::span<const Pixel> pixels) {
  for (const auto& p : pixels) box_.extend(p.x, p.y);
  bits_.assign(static_cast<std::size_t>(box_.width()) * static_cast<std::size_t>(box_.height()), 0);
  for (const auto& p : pixels) {
    bits_[static_cast<std::size_t>(p.y - box_.min_y) * static_cast<std::size_t>(box_.width()) +
          static_cast<std::size_t>(p.x - box_.min_x)] = 1;
  }
}

std::vector<Pixel> contour_of(std::span<const Pixel> pixels) {
  const PixelMask mask(pixels);
  std::vector<Pixel> out;
  for (const auto& p : pixels) {
    if (!mask.contains(p.x - 1, p.y) || !mask.contains(p.x + 1, p.y) ||
        !mask.contains(p.x, p.y - 1) || !mask.contains(p.x, p.y + 1)) {
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), row_major_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Region make_region(Label label, std::vector<Pixel> pixels) {
  Region r;
  r.label = label;
  std::sort(pixels.begin(), pixels.end(), row_major_less);
  pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
  r.pixels = std::move(pixels);
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& p : r.pixels) {
    r.bbox.extend(p.x, p.y);
    sx += p.x;
    sy += p.y;
  }
  if (!r.pixels.empty()) {
    const auto n = static_cast<double>(r.pixels.size());
    r.centroid = {sx / n, sy / n};
  }
  r.contour = contour_of(r.pixels);
  return r;
}

std::vector<Region> extract_regions(const SegMap& map, Role role) {
  std::vector<Region> regions;
  for (Label label : map.palette().labels_for(role)) {
    for_each_component8(
        map.width(), map.height(), [&](int x, int y) { return map.at(x, y) == label; },
        [&](const std::vector<Pixel>& comp) { regions.push_back(make_region(label, comp)); });
  }
  std::stable_sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    if (a.bbox.min_y != b.bbox.min_y) return a.bbox.min_y < b.bbox.min_y;
    return a.bbox.min_x < b.bbox.min_x;
  });
  return regions;
}

SegMap write_region(const SegMap& map, std::span<const Pixel> pixels, Label label) {
  if (!map.palette().contains(label)) {
    throw UnknownLabel("label " + std::to_string(label) + " is not in the palette");
  }
  SegMap out = map;
  for (const auto& p : pixels) {
    if (out.in_bounds(p.x, p.y)) out.set(p.x, p.y, label);
  }
  return out;
}

SegMap erase_region(const SegMap& map, std::span<const Pixel> pixels, Label fill) {
  return write_region(map, pixels, fill);
}

void fill_vacated(SegMap& map, std::span<const Pixel> vacated) {
  if (vacated.empty()) return;
  const auto& palette = map.palette();
  const auto skin = palette.first_label_for(Role::kSkinNeck);
  const Label background = palette.background_label();
  const PixelMask mask(vacated);
  const BBox& box = mask.bbox();

  for_each_component8(
      box.width(), box.height(),
      [&](int x, int y) { return mask.contains(x + box.min_x, y + box.min_y); },
      [&](const std::vector<Pixel>& local) {
        bool touches_skin = false;
        if (skin) {
          for (const auto& lp : local) {
            const int x = lp.x + box.min_x;
            const int y = lp.y + box.min_y;
            for (int k = 0; k < 8 && !touches_skin; ++k) {
              const int nx = x + kDx8[k];
              const int ny = y + kDy8[k];
              if (!map.in_bounds(nx, ny) || mask.contains(nx, ny)) continue;
              touches_skin = map.role_at(nx, ny) == Role::kSkinNeck;
            }
            if (touches_skin) break;
          }
        }
        const Label fill = touches_skin ? *skin : background;
        for (const auto& lp : local) map.set(lp.x + box.min_x, lp.y + box.min_y, fill);
      });
}

SegMap composite_clothing(const SegMap& map, std::span<const Region> clothing) {
  const Label cloth = map.palette().clothing_label();
  const int cloth_rank = compositing_rank(Role::kClothing);
  std::vector<std::uint8_t> covered(map.labels().size(), 0);
  for (const auto& region : clothing) {
    for (const auto& p : region.pixels) {
      if (map.in_bounds(p.x, p.y)) {
        covered[static_cast<std::size_t>(p.y) * static_cast<std::size_t>(map.width()) +
                static_cast<std::size_t>(p.x)] = 1;
      }
    }
  }
  SegMap out = map;
  std::vector<Pixel> vacated;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const bool is_new = covered[static_cast<std::size_t>(y) * static_cast<std::size_t>(map.width()) +
                                  static_cast<std::size_t>(x)] != 0;
      const Label current = map.at(x, y);
      if (is_new) {
        if (current != cloth && compositing_rank(map.palette().role_of(current)) < cloth_rank) {
          out.set(x, y, cloth);
        }
      } else if (current == cloth) {
        vacated.push_back({x, y});
      }
    }
  }
  fill_vacated(out, vacated);
  return out;
}

}  // namespace sizefit
