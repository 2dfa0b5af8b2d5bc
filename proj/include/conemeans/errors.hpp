#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conemeans {

/// Base of every library exception. `is_math_failure()` separates a violated
/// mathematical check from bad input, which the CLI maps to exit codes 2 / 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual bool is_math_failure() const { return false; }
};

class InputError : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  explicit SpaceMismatch(const std::string& what) : Error("space mismatch: " + what) {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSpace : public Error {
 public:
  using Error::Error;
};

class UndefinedProduct : public Error {
 public:
  UndefinedProduct() : Error("undefined product 0 * +inf") {}
};

class SupportCapExceeded : public Error {
 public:
  SupportCapExceeded(std::size_t size, std::size_t cap)
      : Error("support cap exceeded: " + std::to_string(size) + " > " + std::to_string(cap)) {}
};

class NotAChain : public Error {
 public:
  NotAChain(std::size_t first, std::size_t second, std::string reason)
      : Error("not a chain: elements " + std::to_string(first) + " and " + std::to_string(second) +
              " are " + reason),
        first_(first),
        second_(second),
        reason_(std::move(reason)) {}
  bool is_math_failure() const override { return true; }
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t first_;
  std::size_t second_;
  std::string reason_;
};

class NotFullAt : public Error {
 public:
  explicit NotFullAt(const std::string& vector)
      : Error("chain is not full at " + vector) {}
  bool is_math_failure() const override { return true; }
};

class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& what) : Error("precondition failed: " + what) {}
  bool is_math_failure() const override { return true; }
};

class SupplierContractViolation : public Error {
 public:
  explicit SupplierContractViolation(const std::string& what)
      : Error("supplier contract violation: " + what) {}
  bool is_math_failure() const override { return true; }
};

}  // namespace conemeans
