#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pmx {

enum class Sort { Bool, Nat, Int };

const char *sort_name(Sort sort);
std::optional<Sort> sort_from_name(const std::string &name);

/// Nat is accepted wherever Int is expected; nothing else converts implicitly.
bool assignable(Sort from, Sort to);

/// A data value. Naturals and integers share one numeric representation and compare
/// equal when numerically equal; the sort tag records the static type.
class Value {
public:
  Value() = default;

  static Value boolean(bool b);
  /// Throws Error(Eval) when n is negative.
  static Value nat(std::int64_t n);
  static Value integer(std::int64_t n);

  Sort sort() const { return sort_; }
  bool is_bool() const { return sort_ == Sort::Bool; }
  bool as_bool() const { return raw_ != 0; }
  std::int64_t as_int() const { return raw_; }

  /// Same value, retagged. Converting a negative number to Nat throws Error(Eval).
  Value as(Sort sort) const;

  /// Decimal for numbers, `true`/`false` for booleans.
  std::string text() const;

  friend bool operator==(const Value &a, const Value &b) {
    return a.is_bool() == b.is_bool() && a.raw_ == b.raw_;
  }
  friend std::strong_ordering operator<=>(const Value &a, const Value &b) {
    if (a.is_bool() != b.is_bool())
      return a.is_bool() ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.raw_ <=> b.raw_;
  }

  std::size_t hash() const { return std::hash<std::int64_t>{}(raw_ * 2 + (is_bool() ? 1 : 0)); }

private:
  Value(Sort sort, std::int64_t raw) : sort_(sort), raw_(raw) {}

  Sort sort_ = Sort::Bool;
  std::int64_t raw_ = 0;
};

std::size_t hash_values(const std::vector<Value> &values, std::size_t seed = 0);

} // namespace pmx
