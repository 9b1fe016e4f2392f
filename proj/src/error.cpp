#include "mlc/error.hpp"

namespace mlc {

const char* to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::kMissingDimension:
      return "missing DIMENSION";
    case ParseErrorKind::kUnsupportedEdgeWeightType:
      return "unsupported EDGE_WEIGHT_TYPE";
    case ParseErrorKind::kUnsupportedProblemType:
      return "unsupported TYPE";
    case ParseErrorKind::kCoordinateCountMismatch:
      return "coordinate count mismatch";
    case ParseErrorKind::kMalformed:
      return "malformed input";
    case ParseErrorKind::kIo:
      return "i/o error";
  }
  return "unknown";
}

}  // namespace mlc
