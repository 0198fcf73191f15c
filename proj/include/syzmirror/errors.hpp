#pragma once

#include <stdexcept>
#include <string>

namespace syz {

// Base of every library error. exit_code() is what the CLI returns.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual int exit_code() const { return 5; }
};

// Malformed or inconsistent input (exit 3).
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class SideError : public InputError {
 public:
  using InputError::InputError;
};

// Input is well formed but a mathematical precondition fails (exit 4).
class PreconditionError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

class NotPrimitiveError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class ConstraintViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotReflexiveError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotConvexError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotMovableError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class UnboundedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DegenerateError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Internal consistency check failed (exit 5).
class InvariantError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 5; }
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace syz
