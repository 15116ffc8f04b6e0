#pragma once

#include <stdexcept>
#include <string>

namespace shd {

/// Malformed input: bad JSON, unknown labels, arity or degree mismatches.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (e.g. m_1(a) != 0 for an inner
/// derivation, a product that is not associative).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(std::string what, std::string kind = {})
      : std::runtime_error(std::move(what)), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

/// An internal invariant (homogeneity, symmetry) was violated.
class SignConventionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace shd
