#pragma once

#include <stdexcept>
#include <string>

namespace apdelay {

/// Root of every error raised by the library. The concrete subclasses name
/// the failure; callers that only need a message can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define APDELAY_ERROR(Name)                   \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(std::string(#Name ": ") + what) {} \
  }

// Input that violates a documented invariant of a domain type.
APDELAY_ERROR(ValidationError);
APDELAY_ERROR(BasisMismatch);
APDELAY_ERROR(DimMismatch);

// apfun
APDELAY_ERROR(InsufficientCoverage);
APDELAY_ERROR(IncommensurableTau);
APDELAY_ERROR(OnAxis);
APDELAY_ERROR(AtPole);
APDELAY_ERROR(SpanTooShort);
APDELAY_ERROR(AmbiguousBoundary);

// chroots; the first three are numerical failures (CLI exit code 3).
APDELAY_ERROR(BoundaryRoot);
APDELAY_ERROR(NoConvergence);
APDELAY_ERROR(EigenvalueOnContour);
APDELAY_ERROR(SingularAtPoint);

// massera
APDELAY_ERROR(WindowTooSmall);

// simulate
APDELAY_ERROR(AdvanceTermPresent);
APDELAY_ERROR(StepTooLarge);

// cli
APDELAY_ERROR(IoError);

#undef APDELAY_ERROR

/// Raised when the input text is not well-formed. `line` is 1-based, 0 when
/// the failure is structural rather than tied to a position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error("ParseError: " + what + (line > 0 ? " (line " + std::to_string(line) + ")" : "")),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace apdelay
