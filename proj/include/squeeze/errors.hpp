#pragma once

#include <stdexcept>
#include <string>

namespace squeeze {

// Precondition violated by an argument (out-of-range quantum number, bad axis, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Mean spin too short for a perpendicular plane to be defined.
class DegenerateDirectionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Request exceeds what a brute-force routine can allocate.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written, or its content is malformed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace squeeze
