#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinboson {

/// Input outside an operation's mathematical domain (bad parity, out-of-range
/// index, Z letter where only ladder letters are allowed, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A physical validity bound was violated (XY temperature bounds, divergent
/// geometric sums).
class ValidityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Work or memory estimate exceeds the configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial expression could not be parsed. `position()` is a 0-based
/// character offset into the input.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace spinboson
