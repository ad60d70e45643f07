#include "sizefit/pipeline.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "sizefit/error.hpp"
#include "sizefit/segmap_io.hpp"

namespace sizefit {

namespace {

template <typename Fn>
auto staged(RunReport& report, const char* stage, Fn&& fn) {
  report.stages.emplace_back(stage);
  try {
    return fn();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

double finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ProcessingError(std::string("report field ") + field + " is not finite");
  return v;
}

}  // namespace

void JobConfig::validate() const {
  for (const auto& [path, what] : {std::pair{segmap, "segmentation map"}, std::pair{palette, "palette"},
                                   std::pair{pose, "pose"}}) {
    if (path.empty()) throw InputError(std::string(what) + " path is empty");
    if (!std::filesystem::is_regular_file(path)) {
      throw InputError(std::string(what) + " file " + path.string() + " does not exist");
    }
  }
  if (out.empty()) throw InputError("output path is empty");
  if (report.empty()) throw InputError("report path is empty");
  sizes.validate();
  if (options.collar.iterations < 1) throw InputError("collar iterations must be >= 1");
  if (!(options.collar.sx_frac > 0.0 && options.collar.sy_frac > 0.0)) {
    throw InputError("collar fractions must be positive");
  }
}

std::filesystem::path JobConfig::output_palette_path() const {
  if (out_palette) return *out_palette;
  auto p = out;
  p.replace_extension(".palette.json");
  return p;
}

std::string RunReport::to_json() const {
  using nlohmann::json;
  json j;
  j["stages"] = stages;
  j["virtual_size"] = {{"h_tilde", finite(virtual_size.h_tilde, "h_tilde")},
                       {"w_tilde", finite(virtual_size.w_tilde, "w_tilde")},
                       {"alpha", finite(virtual_size.alpha, "alpha")}};
  j["scale"] = {{"rule", std::string(horizontal_rule_name(rule))},
                {"s_h", finite(s_h, "s_h")},
                {"s_v", finite(s_v, "s_v")},
                {"current_height_px", current_height}};
  j["clothing_components"] = clothing_components;
  json overlap = {{"skipped", overlap_skipped}};
  if (overlap_skipped) {
    overlap["reason"] = overlap_skip_reason;
  } else {
    overlap["distance_before"] = finite(overlap_distance_before, "distance_before");
    overlap["distance_scaled"] = finite(overlap_distance_scaled, "distance_scaled");
    overlap["distance_after"] = finite(overlap_distance_after, "distance_after");
    overlap["translation"] = {overlap_translation.x, overlap_translation.y};
    overlap["moved_component"] = overlap_moved_component;
  }
  j["overlap"] = overlap;
  json collar = {{"skipped", collar_skipped}};
  if (!collar_skipped) {
    collar["iterations"] = collar_iterations;
    collar["pixels_removed"] = collar_pixels_removed;
    collar["rect"] = {{"center", {finite(collar_rect.center.x, "center"), finite(collar_rect.center.y, "center")}},
                      {"s_x", finite(collar_rect.s_x, "s_x")},
                      {"s_y", finite(collar_rect.s_y, "s_y")}};
  }
  j["collar"] = collar;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

RunResult process(const SegMap& map, const Pose& pose, const SizeSpec& sizes,
                  const PipelineOptions& options) {
  RunResult result{map, {}};
  RunReport& report = result.report;
  const double thr = options.confidence_threshold;
  report.rule = options.rule;

  report.virtual_size =
      staged(report, "geometry", [&] { return compute_virtual_size(sizes, pose, thr); });

  const auto components = extract_regions(map, Role::kClothing);
  report.clothing_components = components.size();
  const ScalePlan plan = staged(report, "plan_scale", [&] {
    return plan_scale(components, pose, report.virtual_size, options.rule, thr);
  });
  report.s_h = plan.s_h;
  report.s_v = plan.s_v;
  report.current_height = plan.current_height;

  const auto scaled = staged(report, "scale", [&] {
    std::vector<Region> out;
    out.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
      out.push_back(scale_region(components[i], plan.s_h, plan.s_v, plan.anchors[i],
                                 {map.width(), map.height()}));
    }
    return out;
  });

  result.map = staged(report, "composite", [&] { return composite_clothing(map, scaled); });

  if (options.skip_overlap) {
    report.overlap_skip_reason = "disabled";
  } else if (components.size() == 1) {
    report.overlap_skip_reason = "single clothing component";
  } else {
    staged(report, "overlap", [&] {
      if (components.size() != 2) throw ComponentCountMismatch(components.size());
      const ClosestPair before = closest_pair(components[0], components[1]);
      auto corr = correct_overlap(map, before, scaled, options.tolerances.distance_px);
      result.map = std::move(corr.map);
      report.overlap_skipped = false;
      report.overlap_distance_before = corr.distance_before;
      report.overlap_distance_scaled = corr.distance_scaled;
      report.overlap_distance_after = corr.distance_after;
      report.overlap_translation = corr.translation;
      report.overlap_moved_component = corr.moved;
      report.warnings.insert(report.warnings.end(), corr.warnings.begin(), corr.warnings.end());
      return 0;
    });
  }

  if (options.skip_collar) return result;
  staged(report, "collar", [&] {
    const CollarRect rect = collar_rect(pose, report.virtual_size, options.collar, thr);
    auto eroded = erode_collar(result.map, rect, options.collar.iterations);
    if (rect.pixel_bounds(map.width(), map.height()).empty()) {
      report.warnings.push_back("collar rectangle lies outside the map");
    }
    result.map = std::move(eroded.map);
    report.collar_skipped = false;
    report.collar_rect = rect;
    report.collar_iterations = options.collar.iterations;
    report.collar_pixels_removed = eroded.removed;
    return 0;
  });
  return result;
}

RunResult run(const JobConfig& config) {
  RunReport load_report;
  const auto [map, pose] = staged(load_report, "load", [&] {
    config.validate();
    return std::pair{load_segmap(config.segmap, config.palette), load_pose_json(config.pose)};
  });
  RunResult result = process(map, pose, config.sizes, config.options);
  staged(load_report, "write", [&] {
    save_segmap(result.map, config.out, config.output_palette_path());
    write_text(config.report, result.report.to_json());
    return 0;
  });
  return result;
}

}  // namespace sizefit
