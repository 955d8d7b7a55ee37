#pragma once

#include <stdexcept>
#include <string>

namespace pht {

// Thrown when two independent computation routes that must agree disagree.
// The CLI maps this to exit code 3; it always indicates a bug, never bad
// user input.
class InternalCheckError : public std::runtime_error {
 public:
  explicit InternalCheckError(const std::string& what)
      : std::runtime_error(what) {}
};

// A Frobenius block structure with a continuum of invariant subspaces
// (some eigenvalue carries two or more Jordan blocks); the finite lattice
// enumeration is refused rather than approximated.
class InfiniteFamilyError : public std::runtime_error {
 public:
  explicit InfiniteFamilyError(const std::string& what)
      : std::runtime_error(what) {}
};

// No weakly admissible filtration of the requested type exists for the given
// eigenvalue data; carries the polygon witness in the message. A negative
// decision (CLI exit 1), not a usage error.
class NoAdmissibleFiltration : public std::runtime_error {
 public:
  explicit NoAdmissibleFiltration(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace pht
