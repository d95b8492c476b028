// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace peps {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: shape mismatches, bad permutations, out-of-range sites.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A tensor would exceed the configured element-count guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// SVD failure, non-finite data, vanishing probabilities.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic error in a circuit file; carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace peps
