#include "canonphase/error.hpp"

namespace canonphase {

ErrorClass classify_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitaryMatrix:
    case ErrorKind::SizeLimit:
    case ErrorKind::ZeroSuccess:
      return ErrorClass::Numeric;
    case ErrorKind::Io:
      return ErrorClass::Io;
    default:
      return ErrorClass::Validation;
  }
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::NonUnitaryMatrix: return "non-unitary-matrix";
    case ErrorKind::InvalidNetlist: return "invalid-netlist";
    case ErrorKind::ModeOutOfRange: return "mode-out-of-range";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::PhotonNumberMismatch: return "photon-number-mismatch";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::CutoffTooSmall: return "cutoff-too-small";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::NeedTwoModes: return "need-at-least-two-modes";
    case ErrorKind::ZeroSuccess: return "zero-success";
    case ErrorKind::InvalidEfficiency: return "invalid-efficiency";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::InvalidFormat: return "invalid-format";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace canonphase
