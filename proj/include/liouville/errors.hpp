#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Two enclosures overlap at the working precision; retry with a larger budget.
class IncomparableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A requested quantity exceeds the materialization cap.
class UnmaterializableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enclosure is too wide to pin down a discrete answer (quotient, branch, ...).
class AmbiguousEnclosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AnchorMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liouville
