#pragma once

#include <stdexcept>
#include <string>

namespace fusionkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define FUSIONKIT_ERROR(Name)                                            \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    const char* kind() const noexcept override { return #Name; }         \
  }

FUSIONKIT_ERROR(InvalidPermutation);
FUSIONKIT_ERROR(ClosureTooLarge);
FUSIONKIT_ERROR(TooLarge);
FUSIONKIT_ERROR(NotASubgroup);
FUSIONKIT_ERROR(NotAPGroup);
FUSIONKIT_ERROR(NotFullyNormalized);
FUSIONKIT_ERROR(BadObjectSet);
FUSIONKIT_ERROR(NoSuchRestriction);
FUSIONKIT_ERROR(NoSuchExtension);
FUSIONKIT_ERROR(NotATransporterSystem);
FUSIONKIT_ERROR(NotACocycle);
FUSIONKIT_ERROR(SearchSpaceTooLarge);
FUSIONKIT_ERROR(ArithmeticOverflow);
FUSIONKIT_ERROR(ParseError);

#undef FUSIONKIT_ERROR

}  // namespace fusionkit
