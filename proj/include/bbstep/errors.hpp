#pragma once

#include <stdexcept>
#include <string>

namespace bbstep {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The secant pair cannot produce a finite steplength (sᵀy = 0 or a zero vector).
class DegeneratePair : public Error {
public:
  using Error::Error;
};

/// A formula input lies outside its mathematical domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Least-squares data admit no finite minimizer.
class DegenerateData : public Error {
public:
  using Error::Error;
};

/// Raised by the engine's steplength dispatch when no safeguard can recover
/// an undefined raw formula.
class DegenerateStep : public Error {
public:
  using Error::Error;
};

class InvalidBracket : public Error {
public:
  using Error::Error;
};

class MissingMinimizer : public Error {
public:
  using Error::Error;
};

class InvalidSpec : public Error {
public:
  using Error::Error;
};

/// Bad command-line input. `flag()` names the offending option when known.
class UsageError : public Error {
public:
  UsageError(const std::string &what, std::string flag = {})
      : Error(what), flag_(std::move(flag)) {}
  const std::string &flag() const noexcept { return flag_; }

private:
  std::string flag_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace bbstep
