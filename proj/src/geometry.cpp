#include "sizefit/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sizefit/error.hpp"

namespace sizefit {

namespace body25 {

std::string_view name(int index) {
  static constexpr std::array<std::string_view, kCount> kNames = {
      "Nose",    "Neck",      "RShoulder", "RElbow",   "RWrist", "LShoulder", "LElbow",
      "LWrist",  "MidHip",    "RHip",      "RKnee",    "RAnkle", "LHip",      "LKnee",
      "LAnkle",  "REye",      "LEye",      "REar",     "LEar",   "LBigToe",   "LSmallToe",
      "LHeel",   "RBigToe",   "RSmallToe", "RHeel"};
  if (index < 0 || index >= kCount) return "Unknown";
  return kNames[static_cast<std::size_t>(index)];
}

}  // namespace body25

Pose::Pose(const std::array<Keypoint, body25::kCount>& keypoints) : keypoints_(keypoints) {
  for (int i = 0; i < body25::kCount; ++i) {
    const auto& kp = keypoints_[static_cast<std::size_t>(i)];
    if (!(kp.confidence >= 0.0 && kp.confidence <= 1.0)) {
      throw FormatError("keypoint " + std::to_string(i) + " has confidence outside [0,1]");
    }
    if (kp.confidence > 0.0 && !(std::isfinite(kp.x) && std::isfinite(kp.y))) {
      throw FormatError("keypoint " + std::to_string(i) + " has non-finite coordinates");
    }
  }
}

bool Pose::detected(int index, double threshold) const {
  return (*this)[index].confidence > threshold;
}

Point2 Pose::require(int index, double threshold) const {
  if (index < 0 || index >= body25::kCount) {
    throw InputError("keypoint index " + std::to_string(index) + " is out of range");
  }
  if (!detected(index, threshold)) throw UndetectedKeypoint(index, std::string(body25::name(index)));
  const auto& kp = (*this)[index];
  return {kp.x, kp.y};
}

void SizeSpec::validate() const {
  auto check = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidSpec(std::string(name) + " must be a positive number of centimeters");
    }
  };
  check(person_height_cm, "person_height_cm");
  check(person_shoulder_cm, "person_shoulder_cm");
  check(cloth_height_cm, "cloth_height_cm");
  check(cloth_shoulder_cm, "cloth_shoulder_cm");
}

void VirtualSize::validate() const {
  if (!(std::isfinite(h_tilde) && h_tilde > 0.0 && std::isfinite(w_tilde) && w_tilde > 0.0 &&
        std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidSpec("virtual size components must be positive and finite");
  }
}

double delta(const Pose& pose, int i, int j, double threshold) {
  const Point2 a = pose.require(i, threshold);
  const Point2 b = pose.require(j, threshold);
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double virtual_height(const SizeSpec& spec, const Pose& pose, double threshold) {
  spec.validate();
  return spec.cloth_height_cm / spec.person_height_cm *
         delta(pose, body25::kNeck, body25::kMidHip, threshold);
}

double virtual_width(const SizeSpec& spec, const Pose& pose, double threshold) {
  spec.validate();
  return spec.cloth_shoulder_cm / spec.person_shoulder_cm *
         delta(pose, body25::kRShoulder, body25::kLShoulder, threshold);
}

double lateral_extent_alpha(const Pose& pose, double threshold) {
  return delta(pose, body25::kRShoulder, body25::kLShoulder, threshold) +
         delta(pose, body25::kRShoulder, body25::kRElbow, threshold) +
         delta(pose, body25::kLShoulder, body25::kLElbow, threshold);
}

VirtualSize compute_virtual_size(const SizeSpec& spec, const Pose& pose, double threshold) {
  VirtualSize vs{virtual_height(spec, pose, threshold), virtual_width(spec, pose, threshold),
                 lateral_extent_alpha(pose, threshold)};
  vs.validate();
  return vs;
}

Pose parse_pose_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("pose file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("people") || !doc["people"].is_array() ||
      doc["people"].empty()) {
    throw FormatError("pose file has no people[0] entry");
  }
  const auto& person = doc["people"][0];
  if (!person.is_object() || !person.contains("pose_keypoints_2d") ||
      !person["pose_keypoints_2d"].is_array()) {
    throw FormatError("people[0] has no pose_keypoints_2d array");
  }
  const auto& flat = person["pose_keypoints_2d"];
  if (flat.size() != 3 * body25::kCount) {
    throw FormatError("pose_keypoints_2d must hold 75 numbers (25 keypoints), got " +
                      std::to_string(flat.size()));
  }
  std::array<Keypoint, body25::kCount> kps{};
  for (std::size_t k = 0; k < kps.size(); ++k) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (!flat[3 * k + c].is_number()) {
        throw FormatError("pose_keypoints_2d entry " + std::to_string(3 * k + c) +
                          " is not a number");
      }
    }
    kps[k] = {flat[3 * k].get<double>(), flat[3 * k + 1].get<double>(),
              flat[3 * k + 2].get<double>()};
  }
  return Pose(kps);
}

Pose load_pose_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open pose file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_pose_json(buf.str());
}

std::string pose_to_json(const Pose& pose) {
  nlohmann::json flat = nlohmann::json::array();
  for (const auto& kp : pose.keypoints()) {
    flat.push_back(kp.x);
    flat.push_back(kp.y);
    flat.push_back(kp.confidence);
  }
  nlohmann::json person = {{"person_id", {-1}}, {"pose_keypoints_2d", flat}};
  nlohmann::json doc = {{"version", 1.3}, {"people", nlohmann::json::array({person})}};
  return doc.dump(1) + "\n";
}

}  // namespace sizefit
