#pragma once

#include <stdexcept>
#include <string>

namespace certmesh {

enum class ErrorKind {
  ZeroPolynomial,
  ParseError,
  InvalidInput,
  InvalidRegion,
  DegreeTooSmall,
  MaxDepthExceeded,
  CardinalityViolation,
  AlternatingPattern,
  CollarInterference,
  SingularOnBoundary,
  OverlappingSingularityNeighborhoods,
  ClosedLoopInAnnulus,
  AmbiguousCell,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind and the pipeline stage
// that produced it, so the CLI can report both in its JSON error body.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string& message)
      : std::runtime_error(message), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace certmesh
