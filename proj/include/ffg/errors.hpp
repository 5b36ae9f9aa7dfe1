#pragma once

#include <stdexcept>
#include <string>

namespace ffg {

/// Bad user input: malformed shapes, out-of-range indices, unknown names.
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside the domain of the operation
/// (e.g. asking for the flagged partition of a non-vexillary permutation).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An identity that must hold by construction failed. Always a bug.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ffg
