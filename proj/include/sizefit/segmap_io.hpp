#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sizefit/segmap.hpp"

namespace sizefit {

// Sidecar palette JSON:
//   {"labels": [{"id": 0, "role": "background", "color": [0, 0, 0]}, ...]}
std::string palette_to_json(const Palette& palette);
Palette parse_palette_json(std::string_view text);
Palette load_palette(const std::filesystem::path& path);
void save_palette(const Palette& palette, const std::filesystem::path& path);

/// 8-bit indexed-colour PNG; palette index == label id. The PLTE chunk
/// carries the display colours, unused indices are black.
std::vector<std::uint8_t> encode_png(const SegMap& map);

/// Decodes an indexed PNG. Roles come from `palette`; every index used in
/// the image must be one of its labels.
SegMap decode_png(std::span<const std::uint8_t> bytes, const Palette& palette);

SegMap load_segmap(const std::filesystem::path& png, const std::filesystem::path& palette);
void save_segmap(const SegMap& map, const std::filesystem::path& png,
                 const std::filesystem::path& palette);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace sizefit
