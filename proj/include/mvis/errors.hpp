#pragma once

#include <stdexcept>
#include <string>

namespace mvis {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MVIS_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// geometry
MVIS_DEFINE_ERROR(InvalidCamera);
MVIS_DEFINE_ERROR(IdenticalPose);
MVIS_DEFINE_ERROR(DegenerateLine);

// scene / io
MVIS_DEFINE_ERROR(MissingView);
MVIS_DEFINE_ERROR(EmptyLabelImage);
MVIS_DEFINE_ERROR(IoError);
MVIS_DEFINE_ERROR(NodeMismatch);
MVIS_DEFINE_ERROR(DimensionMismatch);

// matching
MVIS_DEFINE_ERROR(EmptyRegion);
MVIS_DEFINE_ERROR(AllDegenerate);

// clustering
MVIS_DEFINE_ERROR(InvalidK);
MVIS_DEFINE_ERROR(AsymmetricInput);

// refinement / reconstruction
MVIS_DEFINE_ERROR(EmptyCluster);
MVIS_DEFINE_ERROR(DegenerateGrid);
MVIS_DEFINE_ERROR(EmptyCloud);

// synthetic
MVIS_DEFINE_ERROR(PlacementFailure);

#undef MVIS_DEFINE_ERROR

}  // namespace mvis
