#pragma once

#include <stdexcept>
#include <string>

namespace opcurve {

enum class ErrorKind {
  Precision,      // guarantee window too small for the requested answer
  NotUnit,        // inverse of a non-unit series
  Domain,         // input violates an operation's precondition
  Dimension,      // incompatible sizes
  NoDressing,     // point is outside the big cell
  NotModule,      // frame is not stable under the algebra
  NotCommutative,
  Certification,  // a certified property failed to hold on the window
  Syntax,
  Type,
  Io,
};

const char* to_string(ErrorKind kind);

/// All library failures. `kind()` is the machine-readable category the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace opcurve
