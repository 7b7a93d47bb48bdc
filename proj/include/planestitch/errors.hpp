#pragma once

#include <stdexcept>
#include <string>

namespace planestitch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PLANESTITCH_DEFINE_ERROR(Name)          \
  class Name : public Error {                   \
   public:                                      \
    using Error::Error;                         \
  }

PLANESTITCH_DEFINE_ERROR(DegenerateQuad);
PLANESTITCH_DEFINE_ERROR(PointAtInfinity);
PLANESTITCH_DEFINE_ERROR(DimensionMismatch);
PLANESTITCH_DEFINE_ERROR(EmptyImage);
PLANESTITCH_DEFINE_ERROR(ImageTooSmall);
PLANESTITCH_DEFINE_ERROR(InsufficientMatches);
PLANESTITCH_DEFINE_ERROR(NoConsensus);
PLANESTITCH_DEFINE_ERROR(NonFiniteObjective);
PLANESTITCH_DEFINE_ERROR(SingularSystem);
PLANESTITCH_DEFINE_ERROR(FoldedMesh);
PLANESTITCH_DEFINE_ERROR(CanvasMismatch);
PLANESTITCH_DEFINE_ERROR(EmptyOverlap);
PLANESTITCH_DEFINE_ERROR(ZeroLengthEdge);
PLANESTITCH_DEFINE_ERROR(IoError);
PLANESTITCH_DEFINE_ERROR(ConfigError);

#undef PLANESTITCH_DEFINE_ERROR

}  // namespace planestitch
