#pragma once

#include <stdexcept>
#include <string>

namespace delib {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPoint : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search requested beyond its hard size limit.
class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

// No point satisfies the movement law for this step (sparse space).
class InfeasibleStep : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  ConstraintViolation(long iteration, std::size_t agent, const std::string& what)
      : Error("iteration " + std::to_string(iteration) + ", agent " + std::to_string(agent) +
              ": " + what),
        iteration_(iteration),
        agent_(agent) {}

  long iteration() const noexcept { return iteration_; }
  std::size_t agent() const noexcept { return agent_; }

 private:
  long iteration_;
  std::size_t agent_;
};

}  // namespace delib
