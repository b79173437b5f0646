#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pipeclimb {

// Base for every failure raised by the library. The CLI maps subclasses to
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class PositionError : public Error {
 public:
  using Error::Error;
};

class InvalidRobotLength : public Error {
 public:
  using Error::Error;
};

class AllocationError : public Error {
 public:
  using Error::Error;
};

class OverCompression : public Error {
 public:
  using Error::Error;
};

class SimulationError : public Error {
 public:
  using Error::Error;
};

class UndefinedApe : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Parse failure in a network/scenario/reference file. line == 0 when the
// failure is not tied to a specific line.
class ConfigError : public Error {
 public:
  ConfigError(std::string source, std::size_t line, const std::string& what)
      : Error(line ? source + ":" + std::to_string(line) + ": " + what
                   : source + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pipeclimb
