#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace normtrace {

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 24;

/// Field element. `v` is the integer whose base-p digits are the coefficients
/// of the element in the polynomial basis, least significant first. This is
/// also the canonical enumeration order used everywhere in the library.
struct Elem {
  std::uint32_t v = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

bool is_prime(std::uint64_t n);

/// F_{p^n} realised as F_p[t]/(modulus), with log/exp tables over a
/// primitive element and Zech logarithms for addition in odd characteristic.
///
/// The modulus is the lowest monic irreducible polynomial of the requested
/// degree, where polynomials are ordered by the integer encoding of their
/// non-leading coefficients. Construction is therefore deterministic.
class Field {
 public:
  Field(std::uint32_t p, std::uint32_t degree, std::uint64_t cap = kDefaultFieldCap);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t order() const { return order_; }

  /// Monic modulus, coefficients little-endian, size degree() + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Primitive element used for the log tables.
  Elem generator() const { return generator_; }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return Elem{a.v ^ b.v};
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    const std::uint32_t la = log_[a.v];
    const std::uint32_t lb = log_[b.v];
    const std::uint32_t d = la >= lb ? la - lb : la + group_order_ - lb;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return Elem{0};
    return Elem{exp_[z + lb]};
  }

  Elem neg(Elem a) const {
    if (p_ == 2 || a.v == 0) return a;
    return Elem{exp_[log_[a.v] + group_order_ / 2]};
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return Elem{0};
    return Elem{exp_[log_[a.v] + log_[b.v]]};
  }

  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Discrete log to base generator(); undefined for zero.
  std::uint32_t log(Elem a) const { return log_[a.v]; }
  /// generator()^i for any i.
  Elem exp(std::uint64_t i) const { return Elem{exp_[i % group_order_]}; }
  std::uint32_t group_order() const { return group_order_; }

  bool is_square(Elem a) const { return a.v == 0 || p_ == 2 || log_[a.v] % 2 == 0; }
  /// One square root, or zero() with ok=false when none exists.
  Elem sqrt(Elem a, bool& ok) const;

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t x) const;
  Elem element(std::uint64_t index) const;
  bool contains(Elem a) const { return a.v < order_; }

  std::vector<std::uint32_t> coefficients(Elem a) const;
  Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

 private:
  static constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t p_;
  std::uint32_t degree_;
  std::uint32_t order_;
  std::uint32_t group_order_;
  std::vector<std::uint32_t> modulus_;
  Elem generator_;
  std::vector<std::uint32_t> exp_;  // 2 * group_order_ entries
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

}  // namespace normtrace
