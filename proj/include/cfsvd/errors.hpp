#ifndef CFSVD_ERRORS_HPP
#define CFSVD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cfsvd {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid parameters / configuration (bad lambda, rank out of range, ...).
// The CLI maps these to exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Problems with input data (unreadable files, malformed records, empty
// training sets, ...).  The CLI maps these to exit code 3.
class DataError : public Error {
public:
  using Error::Error;
};

// A record that does not parse; message carries the 1-based line number.
class ParseError : public DataError {
public:
  using DataError::DataError;
};

// A value that parses but is outside its allowed domain (e.g. rating 7).
class DomainError : public DataError {
public:
  using DataError::DataError;
};

// A (user, item) pair appearing more than once in one dataset.
class DuplicateError : public DataError {
public:
  using DataError::DataError;
};

// An iterative numerical routine hit its iteration cap.
class ConvergenceError : public Error {
public:
  explicit ConvergenceError(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

}  // namespace cfsvd

#endif
