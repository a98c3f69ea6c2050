#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loopforge {

/// Raised whenever an exact integer result does not fit the 64-bit
/// coefficient/component representation.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what)
      : std::overflow_error("integer overflow in " + what) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

/// Integer with overflow-checked ring operators. Lets the same algebraic
/// expression be written once for numeric and polynomial scalars.
class CheckedInt {
 public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT: implicit by intent

  constexpr std::int64_t value() const { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) { return checked_add(a.v_, b.v_); }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) { return checked_sub(a.v_, b.v_); }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) { return checked_mul(a.v_, b.v_); }
  friend CheckedInt operator-(CheckedInt a) { return checked_neg(a.v_); }
  friend bool operator==(CheckedInt, CheckedInt) = default;

 private:
  std::int64_t v_ = 0;
};

}  // namespace loopforge
