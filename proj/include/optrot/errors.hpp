#pragma once

#include <stdexcept>
#include <string>

namespace optrot {

/// Base class for all numeric/domain failures raised by the library.
/// name() carries the stable error identifier used by the CLI on stderr.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

#define OPTROT_DEFINE_ERROR(NAME)                                             \
  class NAME : public Error {                                                 \
  public:                                                                     \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {}              \
  }

OPTROT_DEFINE_ERROR(ResonanceSingularity);
OPTROT_DEFINE_ERROR(DegenerateLongitudinal);
OPTROT_DEFINE_ERROR(EvanescentMode);
OPTROT_DEFINE_ERROR(NotFilteringRegime);
OPTROT_DEFINE_ERROR(NotEvanescent);
OPTROT_DEFINE_ERROR(QuadratureNotConverged);
OPTROT_DEFINE_ERROR(GridTruncation);
OPTROT_DEFINE_ERROR(OutOfRange);
OPTROT_DEFINE_ERROR(OmegaZero);
OPTROT_DEFINE_ERROR(NotSmallChi);
OPTROT_DEFINE_ERROR(InconsistentHandedness);
OPTROT_DEFINE_ERROR(ParseError);
OPTROT_DEFINE_ERROR(ValidationError);

#undef OPTROT_DEFINE_ERROR

} // namespace optrot
