#ifndef ACMRR_ERRORS_HPP
#define ACMRR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace acmrr {

// Error taxonomy shared by the library and the CLI. Each class maps to a
// distinct process exit code (see exit_code_for and the README table).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command line / unknown subcommand.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or an operation called outside its domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (traces, series, line tables).
class DataError : public Error {
 public:
  using Error::Error;
};

// A fit failed to converge.
class FitError : public Error {
 public:
  using Error::Error;
};

// A numerical result failed its internal accuracy check.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitData = 4,
  kExitFit = 5,
  kExitAccuracy = 6,
};

}  // namespace acmrr

#endif
