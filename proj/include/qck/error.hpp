#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace qck {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed us something outside an operation's domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Elements or ideals from different fields were combined.
class ContextMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// p is not a prime congruent to 7 mod 16.
class InvalidField : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A mathematical identity that must hold did not: a bug, or a counterexample.
class InternalError : public Error {
 public:
  using Error::Error;
};

// A configured search/size limit was hit before an answer was reached.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class DeadlineExceeded : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

// Wall-clock budget shared by long-running searches.  Default-constructed
// deadlines never expire.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(Clock::time_point at) : at_(at) {}

  static Deadline never() { return Deadline(); }
  static Deadline in(std::chrono::duration<double> d) {
    return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(d));
  }
  static Deadline after_seconds(double s) {
    return in(std::chrono::duration<double>(s));
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  bool unlimited() const { return !at_; }

  void check(const char* what) const {
    if (expired()) throw DeadlineExceeded(std::string("deadline exceeded during ") + what);
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace qck
