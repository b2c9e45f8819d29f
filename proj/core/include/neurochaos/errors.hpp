#pragma once

#include <stdexcept>
#include <string>

namespace neurochaos {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Shapes or lengths do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input values lie outside the domain an operation accepts (e.g. unnormalized data).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

class StratificationError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace neurochaos
