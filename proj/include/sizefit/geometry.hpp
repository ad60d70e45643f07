#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

namespace sizefit {

/// BODY_25 indices used by the sizing math. Index 2 is the person's right
/// shoulder, which appears on the image left for a camera-facing subject.
namespace body25 {
inline constexpr int kCount = 25;
inline constexpr int kNose = 0;
inline constexpr int kNeck = 1;
inline constexpr int kRShoulder = 2;
inline constexpr int kRElbow = 3;
inline constexpr int kRWrist = 4;
inline constexpr int kLShoulder = 5;
inline constexpr int kLElbow = 6;
inline constexpr int kLWrist = 7;
inline constexpr int kMidHip = 8;
inline constexpr int kRHip = 9;
inline constexpr int kRKnee = 10;
inline constexpr int kRAnkle = 11;
inline constexpr int kLHip = 12;
inline constexpr int kLKnee = 13;
inline constexpr int kLAnkle = 14;

std::string_view name(int index);
}  // namespace body25

inline constexpr double kDefaultConfidenceThreshold = 0.1;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  double confidence = 0.0;
};

/// Exactly 25 keypoints in BODY_25 order. Confidence 0 marks an undetected
/// point; the constructor rejects confidences outside [0, 1].
class Pose {
 public:
  Pose() = default;
  explicit Pose(const std::array<Keypoint, body25::kCount>& keypoints);

  const Keypoint& operator[](int index) const { return keypoints_.at(index); }
  const std::array<Keypoint, body25::kCount>& keypoints() const { return keypoints_; }

  bool detected(int index, double threshold = kDefaultConfidenceThreshold) const;

  /// Coordinates of a keypoint, throwing UndetectedKeypoint if its
  /// confidence does not exceed `threshold`.
  Point2 require(int index, double threshold = kDefaultConfidenceThreshold) const;

 private:
  std::array<Keypoint, body25::kCount> keypoints_{};
};

/// Real-world measurements in centimeters. `person_height_cm` is the
/// vertical extent of the person's clothing region (e.g. torso length).
struct SizeSpec {
  double person_height_cm = 0.0;
  double person_shoulder_cm = 0.0;
  double cloth_height_cm = 0.0;
  double cloth_shoulder_cm = 0.0;

  /// Throws InvalidSpec unless all four values are finite and > 0.
  void validate() const;
};

/// Garment extents in image pixels.
struct VirtualSize {
  double h_tilde = 0.0;
  double w_tilde = 0.0;
  double alpha = 0.0;

  void validate() const;
};

double delta(const Pose& pose, int i, int j, double threshold = kDefaultConfidenceThreshold);

/// Garment height in pixels: (H_c / H_p) * delta(1, 8).
double virtual_height(const SizeSpec& spec, const Pose& pose,
                      double threshold = kDefaultConfidenceThreshold);

/// Garment shoulder width in pixels: (W_c / W_p) * delta(2, 5).
double virtual_width(const SizeSpec& spec, const Pose& pose,
                     double threshold = kDefaultConfidenceThreshold);

/// Shoulder span plus both upper-arm lengths: delta(2,5) + delta(2,3) + delta(5,6).
double lateral_extent_alpha(const Pose& pose, double threshold = kDefaultConfidenceThreshold);

VirtualSize compute_virtual_size(const SizeSpec& spec, const Pose& pose,
                                 double threshold = kDefaultConfidenceThreshold);

// OpenPose JSON: people[0].pose_keypoints_2d holds 75 numbers (x, y, c) x 25.
Pose parse_pose_json(std::string_view text);
Pose load_pose_json(const std::filesystem::path& path);
std::string pose_to_json(const Pose& pose);

}  // namespace sizefit
