#pragma once

#include <limits>
#include <span>
#include <vector>

#include "normtrace/field.hpp"

namespace normtrace {

/// Degree reported for the zero polynomial.
inline constexpr int kDegreeNegInf = std::numeric_limits<int>::min();

/// f(x) = a_0 + a_1 x + ... + a_k x^k over a finite field.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Elem> coeffs) : coeffs_(std::move(coeffs)) {}

  std::span<const Elem> coeffs() const { return coeffs_; }
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Elem{0}; }
  int degree() const;
  bool is_zero() const { return degree() == kDegreeNegInf; }

  Elem evaluate(const Field& f, Elem x) const {
    Elem acc = Field::zero();
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs_[i]);
    return acc;
  }

  UniPoly scaled(const Field& f, Elem c) const;

 private:
  std::vector<Elem> coeffs_;
};

struct RootSet {
  std::vector<Elem> roots;  // ascending
  /// Number of roots equals the degree.
  bool all_distinct = false;
};

/// Roots of f in the field, by exhaustive scan. Throws on the zero polynomial.
RootSet distinct_roots_in_field(const Field& field, const UniPoly& f);

}  // namespace normtrace
