#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace icf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDenominator : public Error {
 public:
  InvalidDenominator() : Error("denominator must be positive") {}
};

/// A rational stream was asked for a partial quotient past the end of its expansion.
class OutOfQuotients : public Error {
 public:
  explicit OutOfQuotients(std::size_t index)
      : Error("partial quotient " + std::to_string(index) + " does not exist"), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A dyadic stream exhausted its refinement budget without deciding a query.
class NeedsMoreBits : public Error {
 public:
  explicit NeedsMoreBits(std::size_t bits)
      : Error("refinement budget of " + std::to_string(bits) + " bits exceeded"), bits_(bits) {}
  std::size_t bits() const noexcept { return bits_; }

 private:
  std::size_t bits_;
};

class QuotientOverflow : public Error {
 public:
  QuotientOverflow() : Error("partial quotient exceeds 2^63") {}
};

class NoNeighbors : public Error {
 public:
  NoNeighbors() : Error("fractions of height 1 have no Farey neighbors") {}
};

class DivergentSeries : public Error {
 public:
  explicit DivergentSeries(const std::string& what) : Error("divergent series: " + what) {}
};

class NotExact : public Error {
 public:
  explicit NotExact(const std::string& what) : Error("no exact value: " + what) {}
};

/// Malformed textual input (stream, weight, or height-set specifications, CLI parameters).
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace icf
