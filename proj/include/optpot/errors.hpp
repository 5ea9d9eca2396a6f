#pragma once

#include <stdexcept>
#include <string>

namespace optpot {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define OPTPOT_DECLARE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

OPTPOT_DECLARE_ERROR(ArgumentError);
OPTPOT_DECLARE_ERROR(DomainError);
OPTPOT_DECLARE_ERROR(MonotonicityError);
OPTPOT_DECLARE_ERROR(GridMismatch);
OPTPOT_DECLARE_ERROR(NonConvergence);
OPTPOT_DECLARE_ERROR(NegativePotential);
OPTPOT_DECLARE_ERROR(ZeroDirection);
OPTPOT_DECLARE_ERROR(NoBracket);
OPTPOT_DECLARE_ERROR(SizeError);
OPTPOT_DECLARE_ERROR(ConfigError);
OPTPOT_DECLARE_ERROR(IoError);

#undef OPTPOT_DECLARE_ERROR

}  // namespace optpot
