#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace milnorflow {

// Base class for every error the library raises. The CLI maps subclasses to
// exit codes, so new error kinds should derive from the closest category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- input errors (CLI exit 2) ---

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& expected)
      : Error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// --- weight-system errors (CLI exit 3) ---

class NotQuasihomogeneous : public Error {
 public:
  using Error::Error;
};

class AmbiguousWeights : public Error {
 public:
  using Error::Error;
};

// --- singularity errors (CLI exit 4) ---

class ZeroIdeal : public Error {
 public:
  using Error::Error;
};

class NonIsolatedSingularity : public Error {
 public:
  using Error::Error;
};

// --- internal consistency ---

class NonIntegralProduct : public Error {
 public:
  using Error::Error;
};

class OrderViolation : public Error {
 public:
  using Error::Error;
};

class IntegralityViolation : public Error {
 public:
  using Error::Error;
};

// --- numeric engine ---

class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

class StepTooCoarse : public Error {
 public:
  StepTooCoarse(const std::string& what, double t0, double t1)
      : Error(what), t0_(t0), t1_(t1) {}
  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }

 private:
  double t0_;
  double t1_;
};

class SingularEndpoint : public Error {
 public:
  using Error::Error;
};

class BranchHit : public Error {
 public:
  using Error::Error;
};

}  // namespace milnorflow
