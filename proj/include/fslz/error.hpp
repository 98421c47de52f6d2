#pragma once

#include <stdexcept>
#include <string>

namespace fslz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed container bytes: bad magic, unknown version, truncated input.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Corrupt or desynchronized payload detected while decoding.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or inputs that violate an operation's preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace fslz
