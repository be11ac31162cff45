#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coalg {

/// Raised when two operands disagree on dimensions.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised instead of building a tensor-power matrix whose row space would be
/// larger than the configured cap.
class TensorCapExceeded : public std::runtime_error {
 public:
  TensorCapExceeded(std::size_t requested, std::size_t cap)
      : std::runtime_error("tensor cap exceeded: requested dimension " + std::to_string(requested) +
                           " above limit " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// A unit-requiring operation was called without a valid unit.
class NotAUnit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A map expected to be a co-algebra morphism is not one.
class NotACoalgebraMorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Generated group exceeds the configured order cap.
class GroupOrderExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pushforward or pullback does not respect declared relations.
class RelationNotPreserved : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Model data violates a structural precondition (bad triangle, bad cover
/// degree, unknown label, ...).
class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resource limits shared by every tensor-power construction.
struct Limits {
  /// Largest admissible dimension of a constructed tensor power.
  std::size_t tensor_cap = 200000;
  /// Largest admissible order of a generated finite group.
  std::size_t group_order_cap = 5040;
};

inline void require_within_cap(std::size_t dim, const Limits& limits) {
  if (dim > limits.tensor_cap) throw TensorCapExceeded(dim, limits.tensor_cap);
}

}  // namespace coalg
