#pragma once

#include <stdexcept>
#include <string>

namespace theta {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define THETA_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

THETA_DEFINE_ERROR(InvalidPrime);
THETA_DEFINE_ERROR(ZeroInput);
THETA_DEFINE_ERROR(NotAUnit);
THETA_DEFINE_ERROR(Singular);
THETA_DEFINE_ERROR(NotApplicable);
THETA_DEFINE_ERROR(NotStandardPosition);
THETA_DEFINE_ERROR(InconsistentCase);
THETA_DEFINE_ERROR(NotIsometry);
THETA_DEFINE_ERROR(RadiusTooLarge);
THETA_DEFINE_ERROR(GuardExceeded);
THETA_DEFINE_ERROR(ParseError);

#undef THETA_DEFINE_ERROR

}  // namespace theta
