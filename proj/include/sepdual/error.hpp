#pragma once

#include <stdexcept>
#include <string>

namespace sepdual {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown ids, non-antisymmetric orientations, bad documents.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its precondition (e.g. find_sink on a
// graph that is not cusped).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A search exceeded its configured resource budget. Never a silent answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace sepdual
