#pragma once

#include <stdexcept>
#include <string>

namespace subsum {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SUBSUM_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

SUBSUM_DEFINE_ERROR(DependentColumns)
SUBSUM_DEFINE_ERROR(ShapeMismatch)
SUBSUM_DEFINE_ERROR(LengthMismatch)
SUBSUM_DEFINE_ERROR(AlreadyNoisy)
SUBSUM_DEFINE_ERROR(IoError)
SUBSUM_DEFINE_ERROR(ParseError)
SUBSUM_DEFINE_ERROR(TooLarge)
SUBSUM_DEFINE_ERROR(ValidationError)
SUBSUM_DEFINE_ERROR(Timeout)

#undef SUBSUM_DEFINE_ERROR

}  // namespace subsum
