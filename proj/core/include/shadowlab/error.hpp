#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shadowlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative procedure hit its cap before reaching the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Matrix or vector shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// No closed-form density exists for the requested spectrum/ensemble pair.
class AnalyticFormUnavailable : public Error {
 public:
  using Error::Error;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Installs a process-wide handler for non-fatal diagnostics and returns the
/// previous one. The default handler writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace shadowlab
