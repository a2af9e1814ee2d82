#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace loewy {

// Malformed input: bad JSON, bad numerals, wrong shapes. CLI exit code 1.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematically invalid request: constraint violation, obstructed
// resonance, degenerate chain. CLI exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value too large for double precision.
class Overflow : public DomainError {
 public:
  using DomainError::DomainError;
};

// Evaluation too close to a pole or branch point.
class PoleNear : public DomainError {
 public:
  PoleNear(const std::string& what, std::complex<double> where)
      : DomainError(what), where_(where) {}
  std::complex<double> where() const { return where_; }

 private:
  std::complex<double> where_;
};

}  // namespace loewy
