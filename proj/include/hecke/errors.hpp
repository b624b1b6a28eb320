#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HECKE_DEFINE_ERROR(Name)               \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(#Name ": " + what) {}          \
  }

HECKE_DEFINE_ERROR(MixedCoefficientDomains);
HECKE_DEFINE_ERROR(DivisionByZero);
HECKE_DEFINE_ERROR(PrecisionExhausted);
HECKE_DEFINE_ERROR(NotInvertible);
HECKE_DEFINE_ERROR(WindowExceeded);
HECKE_DEFINE_ERROR(NotInMonoid);
HECKE_DEFINE_ERROR(InvalidSimpleRoot);
HECKE_DEFINE_ERROR(NotMinimalRepresentative);
HECKE_DEFINE_ERROR(NonConstantOnCoset);
HECKE_DEFINE_ERROR(BadCharacteristic);
HECKE_DEFINE_ERROR(LatticeTooLarge);
HECKE_DEFINE_ERROR(ConfigError);
HECKE_DEFINE_ERROR(InvalidArgument);

#undef HECKE_DEFINE_ERROR

}  // namespace hecke
