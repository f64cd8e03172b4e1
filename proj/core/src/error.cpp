#include "chanlearn/error.hpp"

namespace chanlearn {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid parameter";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kInvalidState: return "invalid state";
    case ErrorKind::kSolverFailure: return "solver failure";
    case ErrorKind::kNumericalSingularity: return "numerical singularity";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace chanlearn
