// sizefit: resize the clothing region of a segmentation map to a garment's
// real measurements.

#include <filesystem>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sizefit/error.hpp"
#include "sizefit/fixture.hpp"
#include "sizefit/pipeline.hpp"
#include "sizefit/segmap_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitProcessing = 3;

int run_fixture(const std::string& preset, std::uint32_t seed, const fs::path& out_dir) {
  const auto fixture = sizefit::make_fixture(sizefit::fixture_preset(preset), seed);
  fs::create_directories(out_dir);
  sizefit::save_segmap(fixture.map, out_dir / "segmap.png", out_dir / "palette.json");
  sizefit::write_text(out_dir / "pose.json", sizefit::pose_to_json(fixture.pose));
  const nlohmann::json sizes = {{"person_height_cm", fixture.sizes.person_height_cm},
                                {"person_shoulder_cm", fixture.sizes.person_shoulder_cm},
                                {"cloth_height_cm", fixture.sizes.cloth_height_cm},
                                {"cloth_shoulder_cm", fixture.sizes.cloth_shoulder_cm}};
  sizefit::write_text(out_dir / "sizes.json", sizes.dump(2) + "\n");
  std::cout << "wrote " << preset << " fixture (seed " << seed << ") to " << out_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clothing-size adjustment for human-parsing segmentation maps"};
  app.require_subcommand(1);

  sizefit::JobConfig job;
  std::string h_rule = "alpha";
  auto* run = app.add_subcommand("run", "Resize the clothing region of one map");
  run->add_option("--segmap", job.segmap, "Indexed PNG segmentation map")->required();
  run->add_option("--palette", job.palette, "Palette JSON sidecar")->required();
  run->add_option("--pose", job.pose, "OpenPose BODY_25 JSON")->required();
  run->add_option("--person-height-cm", job.sizes.person_height_cm)->required();
  run->add_option("--cloth-height-cm", job.sizes.cloth_height_cm)->required();
  run->add_option("--person-shoulder-cm", job.sizes.person_shoulder_cm)->required();
  run->add_option("--cloth-shoulder-cm", job.sizes.cloth_shoulder_cm)->required();
  run->add_option("--out", job.out, "Output PNG")->required();
  run->add_option("--out-palette", job.out_palette, "Output palette JSON (default: <out>.palette.json)");
  run->add_option("--report", job.report, "Report JSON")->required();
  run->add_option("--collar-iterations", job.options.collar.iterations)->capture_default_str();
  run->add_option("--collar-sx-frac", job.options.collar.sx_frac)->capture_default_str();
  run->add_option("--collar-sy-frac", job.options.collar.sy_frac)->capture_default_str();
  run->add_option("--confidence-threshold", job.options.confidence_threshold)->capture_default_str();
  run->add_option("--h-rule", h_rule, "Horizontal scale rule")
      ->check(CLI::IsMember({"alpha", "shoulder"}))
      ->capture_default_str();
  run->add_flag("--skip-collar", job.options.skip_collar);
  run->add_flag("--skip-overlap", job.options.skip_overlap);

  std::string preset = "default";
  std::uint32_t seed = 0;
  fs::path out_dir = "fixtures";
  auto* fixture = app.add_subcommand("fixture", "Write a synthetic person fixture");
  fixture->add_option("--preset", preset)
      ->check(CLI::IsMember({"default", "crossing-arm"}))
      ->capture_default_str();
  fixture->add_option("--seed", seed)->capture_default_str();
  fixture->add_option("--out-dir", out_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*fixture) return run_fixture(preset, seed, out_dir);
    job.options.rule = h_rule == "shoulder" ? sizefit::HorizontalRule::kShoulder
                                            : sizefit::HorizontalRule::kAlpha;
    const auto result = sizefit::run(job);
    const auto& r = result.report;
    std::cout << "s_h=" << r.s_h << " s_v=" << r.s_v << " collar_removed=" << r.collar_pixels_removed
              << (r.overlap_skipped ? " overlap=skipped" : " overlap=corrected") << "\n";
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
  } catch (const sizefit::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const sizefit::Error& e) {
    std::cerr << "processing error: " << e.what() << "\n";
    return kExitProcessing;
  } catch (const std::exception& e) {
    std::cerr << "processing error: " << e.what() << "\n";
    return kExitProcessing;
  }
}
