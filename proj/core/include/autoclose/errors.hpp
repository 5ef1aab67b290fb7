#pragma once

#include <stdexcept>
#include <string>

namespace autoclose {

/// Base class for every error raised by the library.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public AlgebraError {
 public:
  DivisionByZero() : AlgebraError("division by zero") {}
};

class FieldMismatch : public AlgebraError {
 public:
  explicit FieldMismatch(const std::string& what) : AlgebraError("field mismatch: " + what) {}
};

class InexactDivision : public AlgebraError {
 public:
  explicit InexactDivision(const std::string& what) : AlgebraError("inexact integer division: " + what) {}
};

class DimensionMismatch : public AlgebraError {
 public:
  explicit DimensionMismatch(const std::string& what) : AlgebraError("dimension mismatch: " + what) {}
};

/// Raised when an operation needs a field but got the integer ring.
class UnsupportedField : public AlgebraError {
 public:
  explicit UnsupportedField(const std::string& what) : AlgebraError("unsupported field: " + what) {}
};

class ParseError : public AlgebraError {
 public:
  explicit ParseError(const std::string& what) : AlgebraError(what) {}
};

/// A tower or tower map violates its structural contract (bad shapes, squares that do not commute).
class MalformedTower : public AlgebraError {
 public:
  explicit MalformedTower(const std::string& what) : AlgebraError(what) {}
};

}  // namespace autoclose
