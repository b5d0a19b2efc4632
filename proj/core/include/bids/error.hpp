#pragma once

#include <stdexcept>
#include <string>

namespace bids {

// Base of every error raised by the library. Callers that only need to tell
// user-input problems from bugs can catch this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file contents; the message names the line or byte offset.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value violates a documented invariant (non-finite entry, empty task, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Shapes disagree: ragged rows, partition length vs column count, feature dims.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bids
