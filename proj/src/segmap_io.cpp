#include "sizefit/segmap_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sizefit/error.hpp"

namespace sizefit {

namespace {

struct ReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void read_callback(png_structp png, png_bytep out, png_size_t length) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->bytes.size()) png_error(png, "truncated PNG data");
  std::memcpy(out, cursor->bytes.data() + cursor->offset, length);
  cursor->offset += length;
}

void write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_callback(png_structp) {}

[[noreturn]] void error_callback(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = message;
  png_longjmp(png, 1);
}

void warning_callback(png_structp, png_const_charp) {}

}  // namespace

std::string palette_to_json(const Palette& palette) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& e : palette.entries()) {
    labels.push_back({{"id", e.id},
                      {"role", std::string(role_name(e.role))},
                      {"color", {e.color.r, e.color.g, e.color.b}}});
  }
  return nlohmann::json{{"labels", labels}}.dump(2) + "\n";
}

Palette parse_palette_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("palette file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("labels") || !doc["labels"].is_array()) {
    throw FormatError("palette file needs a \"labels\" array");
  }
  std::vector<PaletteEntry> entries;
  for (const auto& item : doc["labels"]) {
    if (!item.is_object() || !item.contains("id") || !item.contains("role") ||
        !item.contains("color")) {
      throw FormatError("palette entries need id, role and color");
    }
    const auto& id = item["id"];
    if (!id.is_number_integer() || id.get<long>() < 0 || id.get<long>() > 255) {
      throw FormatError("palette id must be an integer in [0,255]");
    }
    if (!item["role"].is_string()) throw FormatError("palette role must be a string");
    const auto role = parse_role(item["role"].get<std::string>());
    if (!role) throw FormatError("unknown palette role \"" + item["role"].get<std::string>() + "\"");
    const auto& c = item["color"];
    if (!c.is_array() || c.size() != 3) throw FormatError("palette color must be [r, g, b]");
    std::array<std::uint8_t, 3> rgb{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!c[k].is_number_integer() || c[k].get<long>() < 0 || c[k].get<long>() > 255) {
        throw FormatError("palette color channels must be integers in [0,255]");
      }
      rgb[k] = static_cast<std::uint8_t>(c[k].get<long>());
    }
    entries.push_back({static_cast<Label>(id.get<long>()), *role, {rgb[0], rgb[1], rgb[2]}});
  }
  return Palette(std::move(entries));
}

Palette load_palette(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_palette_json(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void save_palette(const Palette& palette, const std::filesystem::path& path) {
  write_text(path, palette_to_json(palette));
}

std::vector<std::uint8_t> encode_png(const SegMap& map) {
  if (map.width() <= 0 || map.height() <= 0) throw FormatError("cannot encode an empty map");
  std::vector<std::uint8_t> out;
  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, error_callback,
                                            warning_callback);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png_create_info_struct failed");
  }

  int max_id = 0;
  for (const auto& e : map.palette().entries()) max_id = std::max<int>(max_id, e.id);
  std::vector<png_color> plte(static_cast<std::size_t>(max_id) + 1, png_color{0, 0, 0});
  for (const auto& e : map.palette().entries()) plte[e.id] = {e.color.r, e.color.g, e.color.b};

  std::vector<png_bytep> rows(static_cast<std::size_t>(map.height()));
  auto* base = const_cast<std::uint8_t*>(map.labels().data());
  for (int y = 0; y < map.height(); ++y) {
    rows[static_cast<std::size_t>(y)] = base + static_cast<std::size_t>(y) * map.width();
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("PNG encode failed: " + error);
  }
  png_set_write_fn(png, &out, write_callback, flush_callback);
  png_set_IHDR(png, info, static_cast<png_uint_32>(map.width()),
               static_cast<png_uint_32>(map.height()), 8, PNG_COLOR_TYPE_PALETTE,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_PLTE(png, info, plte.data(), static_cast<int>(plte.size()));
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

SegMap decode_png(std::span<const std::uint8_t> bytes, const Palette& palette) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw FormatError("not a PNG file");
  }
  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, error_callback,
                                           warning_callback);
  if (!png) throw Error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("png_create_info_struct failed");
  }
  ReadCursor cursor{bytes, 0};
  std::vector<Label> labels;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int color_type = 0;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("PNG decode failed: " + error);
  }
  png_set_read_fn(png, &cursor, read_callback);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (color_type != PNG_COLOR_TYPE_PALETTE) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("segmentation PNG must be indexed-colour");
  }
  if (bit_depth < 8) png_set_packing(png);
  png_read_update_info(png, info);
  labels.resize(static_cast<std::size_t>(width) * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = labels.data() + static_cast<std::size_t>(y) * width;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  return SegMap(static_cast<int>(width), static_cast<int>(height), std::move(labels), palette);
}

SegMap load_segmap(const std::filesystem::path& png, const std::filesystem::path& palette) {
  return decode_png(read_file(png), load_palette(palette));
}

void save_segmap(const SegMap& map, const std::filesystem::path& png,
                 const std::filesystem::path& palette) {
  write_file(png, encode_png(map));
  save_palette(map.palette(), palette);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace sizefit
