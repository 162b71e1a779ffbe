#pragma once

#include <stdexcept>
#include <string>

namespace cp3 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CP3_DEFINE_ERROR(Name)                \
  struct Name : Error {                       \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

CP3_DEFINE_ERROR(CoincidentAtoms);
CP3_DEFINE_ERROR(CollinearAtoms);
CP3_DEFINE_ERROR(NonPositiveScale);
CP3_DEFINE_ERROR(ZeroRadius);
CP3_DEFINE_ERROR(AsymmetricInput);
CP3_DEFINE_ERROR(NearResonance);
CP3_DEFINE_ERROR(NoConvergence);
CP3_DEFINE_ERROR(PoleAtBoundary);
CP3_DEFINE_ERROR(DomainError);
CP3_DEFINE_ERROR(StepTooLarge);
CP3_DEFINE_ERROR(InsufficientBox);
CP3_DEFINE_ERROR(OnResonanceMode);
CP3_DEFINE_ERROR(SchemaError);
CP3_DEFINE_ERROR(ValidationError);

#undef CP3_DEFINE_ERROR

}  // namespace cp3
