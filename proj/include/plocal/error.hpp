#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plocal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or closure passed its configured limit.
class BoundExceeded : public Error {
 public:
  BoundExceeded(const std::string& what, std::size_t partial)
      : Error(what + " (partial count " + std::to_string(partial) + ")"),
        partial_(partial) {}
  std::size_t partial_count() const { return partial_; }

 private:
  std::size_t partial_;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  using Error::Error;
};

class NotSylow : public Error {
 public:
  using Error::Error;
};

class TransporterViolation : public Error {
 public:
  using Error::Error;
};

class NotAHomomorphism : public Error {
 public:
  using Error::Error;
};

class ContainmentViolation : public Error {
 public:
  using Error::Error;
};

/// Two algorithms that must agree did not. Always an implementation bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class CertificateFailure : public Error {
 public:
  using Error::Error;
};

class DisconnectedCategory : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Configurable size limits. The defaults fit a laptop.
struct Limits {
  std::size_t element_bound = 1'000'000;
  std::size_t lattice_bound = 256;
  std::size_t lattice_warn = 64;
  std::size_t closure_bound = 500'000;
};

}  // namespace plocal
