#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "normtrace/code.hpp"
#include "normtrace/tower.hpp"

namespace normtrace {

/// Data of the variety N(Phi_B(s)) = T(f(Phi_B(s))) over F_q^r and of its
/// image under the conjugate-matrix change of variables.
struct VarietySpec {
  std::shared_ptr<const Tower> tower;
  UniPoly f;
  /// conjugate_rows[u-1][i] = a_u^{q^i}, u = 1..deg f, i = 0..r-1.
  std::vector<std::vector<Elem>> conjugate_rows;
  /// T(a_0), an element of the subfield.
  Elem trace_a0;
};

VarietySpec make_variety_spec(std::shared_ptr<const Tower> tower, const UniPoly& f);

/// #{x : N(x) = T(f(x)/b)}; throws for b = 0.
std::uint64_t count_intersections(const NormTraceCurve& curve, const Message& msg);

/// #{s in F_q^r : N(Phi_B(s)) = T(f(Phi_B(s)))}.
std::uint64_t count_S_points(const VarietySpec& spec, unsigned workers = 1);

/// -prod X_i + sum_u sum_i a_u^{q^i} X_{i+1}^u + T(a_0).
Elem vkr_evaluate(const VarietySpec& spec, std::span<const Elem> X);

struct EquivalenceReport {
  std::uint64_t intersections = 0;
  std::uint64_t s_points = 0;
  /// x with vkr_evaluate(x, x^q, ...) = 0.
  std::uint64_t orbit_zeros = 0;
  /// s with vkr_evaluate(M s) = 0.
  std::uint64_t psi_zeros = 0;
  /// x where vkr_evaluate on the orbit differs from T(f(x)) - N(x).
  std::uint64_t orbit_identity_failures = 0;
  RowIdentityReport row_identity;
  bool passed = false;
};

EquivalenceReport equivalence_check(const VarietySpec& spec);

enum class BoundTheorem { lang_weil, cafure_matera, prop_general };
enum class BoundSign { printed, corrected };

std::string_view to_string(BoundTheorem t);
std::string_view to_string(BoundSign s);

struct BoundReport {
  BoundTheorem theorem = BoundTheorem::cafure_matera;
  BoundSign variant = BoundSign::corrected;
  std::uint64_t q = 0;
  unsigned r = 0;
  unsigned k = 0;
  unsigned n = 0;  // r - 1
  unsigned d = 0;  // max(k, r)
  long double constant = 0;  // C for lang_weil, 5 d^{13/3} otherwise
  long double delta = 0;
  /// q > 2 (n + 1) d^2
  bool hypothesis_met = false;
  /// (k, r, p) satisfies one of the irreducibility cases.
  bool cases_met = false;
  /// Window of zero width.
  bool degenerate = false;
  long double lower_value = 0;
  std::optional<long double> upper_value;
  /// floor(lower_value) clamped at 0, and ceil(upper_value).
  std::int64_t lower = 0;
  std::optional<std::int64_t> upper;
  std::optional<std::uint64_t> count;
  std::optional<bool> holds;
};

/// Window around q^n (two-sided theorems) or a lower bound (prop_general).
/// `C` is only used by lang_weil.
BoundReport bound_window(std::uint64_t q, unsigned r, unsigned k, BoundTheorem theorem,
                         BoundSign variant = BoundSign::corrected, long double C = 0);

/// Fills count and holds.
void attach_count(BoundReport& report, std::uint64_t count);

/// f of degree exactly k with uniform coefficients.
UniPoly random_poly(const Field& field, unsigned k, std::mt19937_64& rng);

}  // namespace normtrace
