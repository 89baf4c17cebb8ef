#include "pmx/value.hpp"

#include "pmx/error.hpp"

namespace pmx {

const char *sort_name(Sort sort) {
  switch (sort) {
  case Sort::Bool: return "Bool";
  case Sort::Nat: return "Nat";
  case Sort::Int: return "Int";
  }
  return "?";
}

std::optional<Sort> sort_from_name(const std::string &name) {
  if (name == "Bool")
    return Sort::Bool;
  if (name == "Nat")
    return Sort::Nat;
  if (name == "Int")
    return Sort::Int;
  return std::nullopt;
}

bool assignable(Sort from, Sort to) {
  return from == to || (from == Sort::Nat && to == Sort::Int);
}

Value Value::boolean(bool b) { return Value(Sort::Bool, b ? 1 : 0); }

Value Value::nat(std::int64_t n) {
  if (n < 0)
    throw Error(ErrorKind::Eval, "negative value " + std::to_string(n) + " is not a natural number");
  return Value(Sort::Nat, n);
}

Value Value::integer(std::int64_t n) { return Value(Sort::Int, n); }

Value Value::as(Sort sort) const {
  if (sort == sort_)
    return *this;
  if (sort == Sort::Nat)
    return nat(raw_);
  return Value(sort, raw_);
}

std::string Value::text() const {
  if (is_bool())
    return raw_ ? "true" : "false";
  return std::to_string(raw_);
}

std::size_t hash_values(const std::vector<Value> &values, std::size_t seed) {
  for (const Value &v : values)
    seed ^= v.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

} // namespace pmx
