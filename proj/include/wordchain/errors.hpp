#pragma once

#include <stdexcept>
#include <string>

namespace wordchain {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class invalid_argument : public error {
 public:
  using error::error;
};

/// Word sizes do not match what the operation requires (e.g. N(w) != N(v)+1).
class size_mismatch : public invalid_argument {
 public:
  using invalid_argument::invalid_argument;
};

/// A size or budget cap was exceeded.
class cap_exceeded : public error {
 public:
  using error::error;
};

/// Conditioning on a state that has zero probability under an h-transform.
class zero_probability_state : public error {
 public:
  using error::error;
};

}  // namespace wordchain
