#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sizefit {

// Base of every library error. `stage` is filled in by the pipeline so a
// failure can be attributed to the step that raised it.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string message)
      : std::runtime_error(message), message_(std::move(message)), full_(message_) {}

  const char* what() const noexcept override { return full_.c_str(); }
  const std::string& message() const noexcept { return message_; }
  const std::string& stage() const noexcept { return stage_; }

  void set_stage(std::string stage) {
    stage_ = std::move(stage);
    full_ = stage_.empty() ? message_ : stage_ + ": " + message_;
  }

 private:
  std::string message_;
  std::string stage_;
  std::string full_;
};

// Bad or inconsistent inputs (files, measurements, keypoints). CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// Inputs were valid but an editing stage could not complete. CLI exit code 3.
class ProcessingError : public Error {
 public:
  using Error::Error;
};

class UndetectedKeypoint : public InputError {
 public:
  UndetectedKeypoint(int index, const std::string& name)
      : InputError("keypoint " + std::to_string(index) + " (" + name + ") is not detected"),
        index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class InvalidSpec : public InputError {
 public:
  using InputError::InputError;
};

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownLabel : public InputError {
 public:
  using InputError::InputError;
};

class InconsistentDescriptor : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateRegion : public ProcessingError {
 public:
  using ProcessingError::ProcessingError;
};

class NonPositiveScale : public ProcessingError {
 public:
  using ProcessingError::ProcessingError;
};

class EmptyClothing : public ProcessingError {
 public:
  using ProcessingError::ProcessingError;
};

class OverlappingRegions : public ProcessingError {
 public:
  using ProcessingError::ProcessingError;
};

class ComponentCountMismatch : public ProcessingError {
 public:
  ComponentCountMismatch(std::size_t count)
      : ProcessingError("expected 2 clothing components, found " + std::to_string(count)),
        count_(count) {}
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

}  // namespace sizefit
