#pragma once

#include <stdexcept>
#include <string>

namespace canonphase {

enum class ErrorKind {
  InvalidDimension,
  NonUnitaryMatrix,
  InvalidNetlist,
  ModeOutOfRange,
  ShapeMismatch,
  DimensionMismatch,
  SizeLimit,
  PhotonNumberMismatch,
  IndexOutOfRange,
  CutoffTooSmall,
  InvalidState,
  NeedTwoModes,
  ZeroSuccess,
  InvalidEfficiency,
  InvalidConfig,
  InvalidFormat,
  Io,
};

/// Broad category used by the command line front-end to pick an exit code.
enum class ErrorClass { Validation, Numeric, Io };

ErrorClass classify_error(ErrorKind kind);
const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace canonphase
