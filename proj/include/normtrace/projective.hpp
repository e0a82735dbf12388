#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>

#include "normtrace/field.hpp"

namespace normtrace {

// Projective classes of F^dim \ {0}, each represented by the vector whose
// first nonzero coordinate is 1. Classes are grouped by the position of that
// leading 1 (position 0 first); within a group the remaining coordinates
// count in base `order` with the last coordinate fastest.

/// a * b, or nullopt on overflow.
inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
  return a * b;
}

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned e) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    auto next = checked_mul(acc, base);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

/// (order^dim - 1) / (order - 1), or nullopt on overflow.
inline std::optional<std::uint64_t> projective_count(unsigned dim, std::uint64_t order) {
  std::uint64_t total = 0;
  for (unsigned j = 0; j < dim; ++j) {
    auto block = checked_pow(order, dim - 1 - j);
    if (!block || total > std::numeric_limits<std::uint64_t>::max() - *block) return std::nullopt;
    total += *block;
  }
  return total;
}

inline void projective_unrank(std::uint64_t index, std::uint64_t order, std::span<Elem> out) {
  const unsigned dim = static_cast<unsigned>(out.size());
  for (unsigned lead = 0; lead < dim; ++lead) {
    const std::uint64_t block = *checked_pow(order, dim - 1 - lead);
    if (index < block) {
      for (unsigned i = 0; i < lead; ++i) out[i] = Elem{0};
      out[lead] = Elem{1};
      for (unsigned i = dim; i-- > lead + 1;) {
        out[i] = Elem{static_cast<std::uint32_t>(index % order)};
        index /= order;
      }
      return;
    }
    index -= block;
  }
  throw std::out_of_range("projective class index out of range");
}

/// Index of the class of a nonzero vector that is already normalised.
inline std::uint64_t projective_rank(std::span<const Elem> v, std::uint64_t order) {
  const unsigned dim = static_cast<unsigned>(v.size());
  std::uint64_t offset = 0;
  for (unsigned lead = 0; lead < dim; ++lead) {
    if (v[lead].v == 0) {
      offset += *checked_pow(order, dim - 1 - lead);
      continue;
    }
    if (v[lead].v != 1) throw std::invalid_argument("vector is not normalised");
    std::uint64_t within = 0;
    for (unsigned i = lead + 1; i < dim; ++i) within = within * order + v[i].v;
    return offset + within;
  }
  throw std::invalid_argument("zero vector has no projective class");
}

/// Scales v so that its first nonzero coordinate is 1. Returns false for the
/// zero vector.
inline bool normalise(const Field& f, std::span<Elem> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].v != 0) {
      const Elem s = f.inv(v[i]);
      for (std::size_t j = i; j < v.size(); ++j) v[j] = f.mul(s, v[j]);
      return true;
    }
  }
  return false;
}

}  // namespace normtrace
