#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "normtrace/field.hpp"
#include "normtrace/linalg.hpp"

namespace normtrace {

/// The pair F_q ⊂ F_{q^r} with q = p^m.
///
/// F_{q^r} is a single degree m*r extension of F_p; F_q has its own
/// representation of degree m and is embedded as the subfield fixed by the
/// q-power Frobenius. The tower also carries a normal basis
/// (alpha, alpha^q, ..., alpha^{q^{r-1}}) of F_{q^r} over F_q.
///
/// Immutable after construction; share it through shared_ptr<const Tower>.
class Tower {
 public:
  Tower(std::uint32_t p, std::uint32_t m, std::uint32_t r, std::uint64_t cap = kDefaultFieldCap);

  const Field& base() const { return base_; }
  const Field& ext() const { return ext_; }
  std::uint32_t p() const { return ext_.characteristic(); }
  std::uint32_t m() const { return base_.degree(); }
  std::uint32_t r() const { return r_; }
  std::uint32_t q() const { return base_.order(); }

  /// Image of a base-field element in F_{q^r}.
  Elem embed(Elem base_elem) const { return embed_[base_elem.v]; }
  /// Inverse of embed(), or nullopt when x is not in the subfield.
  std::optional<Elem> to_base(Elem x) const;
  bool in_subfield(Elem x) const { return to_base(x).has_value(); }
  /// Root of the base modulus used to define the embedding.
  Elem subfield_root() const { return subfield_root_; }

  /// x^{q^i}.
  Elem frobenius(Elem x, std::uint64_t i) const {
    if (x.v == 0) return x;
    const std::uint64_t l = ext_.log(x);
    return ext_.exp(l * qpow_[i % r_]);
  }

  /// N(x) = x^{(q^r-1)/(q-1)}, as an element of F_{q^r} lying in the subfield.
  Elem norm(Elem x) const { return Elem{norm_[x.v]}; }
  /// T(x) = x + x^q + ... + x^{q^{r-1}}, as an element of F_{q^r}.
  Elem trace(Elem x) const { return Elem{trace_[x.v]}; }
  /// (N(x), T(x)) as base-field elements.
  std::pair<Elem, Elem> norm_and_trace(Elem x) const;

  Elem alpha() const { return basis_.front(); }
  std::span<const Elem> normal_basis() const { return basis_; }

  /// s_1 alpha + s_2 alpha^q + ... + s_r alpha^{q^{r-1}}; the s_j are
  /// base-field elements.
  Elem phi_basis(std::span<const Elem> s) const;

  /// The r x r matrix with (i, j) entry alpha^{q^{(i+j) mod r}}.
  Matrix conjugate_matrix() const;

  /// Embedded copy of F_q, listed in base-field enumeration order.
  std::vector<Elem> subfield_elements() const;

 private:
  Field base_;
  Field ext_;
  std::uint32_t r_;
  std::vector<std::uint64_t> qpow_;  // q^i mod (q^r - 1)
  Elem subfield_root_;
  std::vector<Elem> embed_;
  std::vector<Elem> from_log_step_;  // base element with embedded log j * step
  std::uint32_t log_step_ = 1;
  std::vector<std::uint32_t> norm_;
  std::vector<std::uint32_t> trace_;
  std::vector<Elem> basis_;
};

std::shared_ptr<const Tower> build_tower(std::uint32_t p, std::uint32_t m, std::uint32_t r,
                                         std::uint64_t cap = kDefaultFieldCap);

/// Splits q into p^m; throws std::invalid_argument if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

std::shared_ptr<const Tower> build_tower_for_q(std::uint64_t q, std::uint32_t r,
                                               std::uint64_t cap = kDefaultFieldCap);

/// Outcome of checking (M s)_i = Phi_B(s)^{q^{i-1}} for every s in F_q^r.
struct RowIdentityReport {
  bool passed = true;
  std::uint64_t vectors_checked = 0;
  std::vector<Elem> counterexample;  // base-field vector, empty on success
  std::uint32_t counterexample_row = 0;
};

RowIdentityReport check_conjugate_matrix_rows(const Tower& tower);

/// Enumerates F_q^r in mixed-radix order (first coordinate fastest),
/// returning base-field elements.
void base_vector_from_index(const Tower& tower, std::uint64_t index, std::span<Elem> out);

}  // namespace normtrace
