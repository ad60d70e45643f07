#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sizefit/collar.hpp"
#include "sizefit/geometry.hpp"
#include "sizefit/overlap.hpp"
#include "sizefit/resize.hpp"
#include "sizefit/segmap.hpp"

namespace sizefit {

/// Every tolerance the pipeline and its checks rely on.
struct Tolerances {
  double distance_px = 1.5;         // overlap separation vs. pre-scale distance
  double size_ratio = 0.02;         // relative error of the output clothing height
  double identity_fraction = 0.99;  // unchanged-pixel share for identity sizing
  double formula_relative = 1e-9;   // geometry against an independent evaluator
};

struct PipelineOptions {
  double confidence_threshold = kDefaultConfidenceThreshold;
  HorizontalRule rule = HorizontalRule::kAlpha;
  CollarConfig collar;
  bool skip_collar = false;
  bool skip_overlap = false;
  Tolerances tolerances;
};

struct JobConfig {
  std::filesystem::path segmap;
  std::filesystem::path palette;
  std::filesystem::path pose;
  SizeSpec sizes;
  PipelineOptions options;
  std::filesystem::path out;
  std::filesystem::path report;
  /// Defaults to the output PNG path with extension ".palette.json".
  std::optional<std::filesystem::path> out_palette;

  /// Throws InputError for missing files or invalid measurements.
  void validate() const;
  std::filesystem::path output_palette_path() const;
};

struct RunReport {
  std::vector<std::string> stages;
  VirtualSize virtual_size;
  HorizontalRule rule = HorizontalRule::kAlpha;
  double s_h = 1.0;
  double s_v = 1.0;
  int current_height = 0;
  std::size_t clothing_components = 0;

  bool overlap_skipped = true;
  std::string overlap_skip_reason;
  double overlap_distance_before = 0.0;
  double overlap_distance_scaled = 0.0;
  double overlap_distance_after = 0.0;
  Pixel overlap_translation;
  int overlap_moved_component = -1;

  bool collar_skipped = true;
  CollarRect collar_rect;
  int collar_iterations = 0;
  std::size_t collar_pixels_removed = 0;

  std::vector<std::string> warnings;

  /// Stable key order and number formatting, so identical runs produce
  /// identical bytes.
  std::string to_json() const;
};

struct RunResult {
  SegMap map;
  RunReport report;
};

/// Runs every stage on in-memory inputs. Errors carry the failing stage.
RunResult process(const SegMap& map, const Pose& pose, const SizeSpec& sizes,
                  const PipelineOptions& options = {});

/// Loads the job's files, runs process() and writes the output PNG, its
/// palette sidecar and the report.
RunResult run(const JobConfig& config);

}  // namespace sizefit
