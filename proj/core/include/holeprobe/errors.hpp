#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace holeprobe {

/// Malformed or semantically invalid user input (bad file, zero-norm vector,
/// dimension mismatch). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a configured resource cap. The CLI maps this
/// to exit code 3.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::uint64_t projected)
      : std::runtime_error(what), projected_(projected) {}

  std::uint64_t projected() const noexcept { return projected_; }

 private:
  std::uint64_t projected_;
};

/// A caller broke a documented precondition of a library operation.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace holeprobe
