#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "normtrace/curve.hpp"
#include "normtrace/linalg.hpp"
#include "normtrace/unipoly.hpp"

namespace normtrace {

/// The relation b*y = a_k x^k + ... + a_0, encoded as ev(b*y - f(x)).
struct Message {
  Elem b;
  std::vector<Elem> a;  // a_0 .. a_k

  UniPoly f() const { return UniPoly(a); }
  friend bool operator==(const Message&, const Message&) = default;
};

struct Codeword {
  std::vector<Elem> values;
  Message source;

  std::size_t weight() const;
  bool is_zero() const { return weight() == 0; }
};

/// C_{q,r,k}: the span of y, 1, x, ..., x^k evaluated on the affine points of
/// the Norm-Trace curve.
class EvalCode {
 public:
  EvalCode(std::shared_ptr<const NormTraceCurve> curve, unsigned k);

  const NormTraceCurve& curve() const { return *curve_; }
  const std::shared_ptr<const NormTraceCurve>& curve_ptr() const { return curve_; }
  const Tower& tower() const { return curve_->tower(); }
  const Field& field() const { return curve_->tower().ext(); }

  unsigned k() const { return k_; }
  std::size_t length() const { return curve_->size(); }
  /// Number of evaluated functions, k + 2.
  unsigned message_length() const { return k_ + 2; }
  std::size_t measured_dimension() const { return basis_.rows(); }
  /// The dimension stated alongside the code's definition in the literature.
  unsigned claimed_dimension() const { return k_ + 1; }

  /// Rows y, 1, x, ..., x^k evaluated at the ordered points.
  const Matrix& generator() const { return generator_; }
  /// Reduced row echelon basis of the row space of generator().
  const Matrix& basis() const { return basis_; }

  Codeword encode(const Message& msg) const;
  /// Weight of encode(msg) without materialising it; counts zeros per x.
  std::size_t weight(const Message& msg) const;

  /// Message with coordinates (b, a_0, ..., a_k).
  Message message_from_coordinates(std::span<const Elem> coords) const;
  std::vector<Elem> coordinates(const Message& msg) const;

 private:
  std::shared_ptr<const NormTraceCurve> curve_;
  unsigned k_;
  Matrix generator_;
  Matrix basis_;
};

enum class SampleMode { exhaustive, sampled };

struct SpectrumOptions {
  SampleMode mode = SampleMode::exhaustive;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t cap = std::uint64_t{1} << 28;
};

/// weight -> number of messages. Exhaustive spectra cover every message,
/// including the zero message at weight 0.
using Spectrum = std::map<std::size_t, std::uint64_t>;

Spectrum weight_spectrum(const EvalCode& code, const SpectrumOptions& options);

enum class BoundVariant { bezout, corollary_ii_as_printed, corollary_ii_cm_derived };

/// Unclamped real value of a classical weight lower bound. `s` is the
/// polynomial degree for the Bezout form and ignored otherwise.
long double classical_bound_value(std::uint64_t q, unsigned r, unsigned k, unsigned s, BoundVariant variant);

/// floor(classical_bound_value), clamped at 0.
std::int64_t classical_bound(std::uint64_t q, unsigned r, unsigned k, unsigned s, BoundVariant variant);

/// One of: k > r and p does not divide k; k = r >= 4; 0 < k < r.
bool irreducibility_case_met(unsigned k, unsigned r, std::uint32_t p);

/// q > 2 r d^2 with d = max(k, r).
bool cafure_matera_hypothesis(std::uint64_t q, unsigned r, unsigned k);

}  // namespace normtrace
