#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aliasfree {

/// Argument outside the mathematical domain of an operation (non-finite input,
/// invalid schedule range, bad filter parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Tensor shapes that do not fit an operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Kernel/image combinations the padding scheme cannot represent.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input. `offset()` is the byte position where parsing
/// stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace aliasfree
