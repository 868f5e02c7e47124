#pragma once

#include <stdexcept>
#include <string>

namespace dvl {

/// Base of every error the library throws. Non-fatal conditions (refinement
/// that does not converge, failed validation checks) are reported in result
/// structs instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DVL_DEFINE_ERROR(Name)        \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  };

DVL_DEFINE_ERROR(PoleError)
DVL_DEFINE_ERROR(DegreeOverflow)
DVL_DEFINE_ERROR(DomainError)
DVL_DEFINE_ERROR(NotACrossing)
DVL_DEFINE_ERROR(TransversalityViolation)
DVL_DEFINE_ERROR(PatternMismatch)
DVL_DEFINE_ERROR(KernelSingularity)
DVL_DEFINE_ERROR(NonHermitianInput)
DVL_DEFINE_ERROR(DimensionMismatch)
DVL_DEFINE_ERROR(PathLeftDisc)
DVL_DEFINE_ERROR(ParamOutOfRange)
DVL_DEFINE_ERROR(DegeneratePair)
DVL_DEFINE_ERROR(InjectivityScreenFailed)
DVL_DEFINE_ERROR(RootFindingFailure)
DVL_DEFINE_ERROR(MalformedInput)

#undef DVL_DEFINE_ERROR

}  // namespace dvl
