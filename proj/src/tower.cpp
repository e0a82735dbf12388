#include "normtrace/tower.hpp"

#include <stdexcept>
#include <string>

namespace normtrace {

Tower::Tower(std::uint32_t p, std::uint32_t m, std::uint32_t r, std::uint64_t cap)
    : base_(p, m, cap), ext_(p, [&] {
        if (r == 0) throw std::invalid_argument("tower degree r must be positive");
        return m * r;
      }(), cap), r_(r) {
  const std::uint64_t group = ext_.group_order();
  const std::uint32_t q = base_.order();
  qpow_.resize(r_);
  std::uint64_t acc = 1 % group;
  for (std::uint32_t i = 0; i < r_; ++i) {
    qpow_[i] = acc;
    acc = (acc * q) % group;
  }

  // A root of the base modulus inside F_{q^r} defines the embedding.
  const auto& h = base_.modulus();
  bool found = false;
  for (std::uint32_t idx = 0; idx < ext_.order() && !found; ++idx) {
    const Elem beta{idx};
    Elem acc_e = Field::zero();
    for (std::size_t i = h.size(); i-- > 0;) acc_e = ext_.add(ext_.mul(acc_e, beta), ext_.from_int(h[i]));
    if (acc_e.v == 0) {
      subfield_root_ = beta;
      found = true;
    }
  }
  if (!found) throw std::logic_error("base modulus has no root in the extension");

  embed_.resize(q);
  for (std::uint32_t b = 0; b < q; ++b) {
    const auto coeffs = base_.coefficients(Elem{b});
    Elem value = Field::zero();
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      value = ext_.add(ext_.mul(value, subfield_root_), ext_.from_int(coeffs[i]));
    }
    embed_[b] = value;
  }

  log_step_ = static_cast<std::uint32_t>(group / (q - 1));
  from_log_step_.assign(q - 1, Field::zero());
  std::vector<bool> seen(q - 1, false);
  for (std::uint32_t b = 1; b < q; ++b) {
    const std::uint32_t l = ext_.log(embed_[b]);
    if (l % log_step_ != 0 || seen[l / log_step_]) throw std::logic_error("embedding is not a field homomorphism");
    seen[l / log_step_] = true;
    from_log_step_[l / log_step_] = Elem{b};
  }

  const std::uint32_t n = ext_.order();
  norm_.resize(n);
  trace_.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    const Elem e{x};
    norm_[x] = x == 0 ? 0 : ext_.exp(std::uint64_t{ext_.log(e)} * log_step_).v;
    Elem t = Field::zero();
    for (std::uint32_t i = 0; i < r_; ++i) t = ext_.add(t, frobenius(e, i));
    trace_[x] = t.v;
  }

  // First element in enumeration order whose conjugates are independent.
  for (std::uint32_t idx = 1; idx < n && basis_.empty(); ++idx) {
    Matrix moore(r_, r_);
    for (std::uint32_t i = 0; i < r_; ++i) {
      for (std::uint32_t j = 0; j < r_; ++j) moore(i, j) = frobenius(Elem{idx}, i + j);
    }
    if (rank(ext_, moore) == r_) {
      for (std::uint32_t j = 0; j < r_; ++j) basis_.push_back(frobenius(Elem{idx}, j));
    }
  }
  if (basis_.empty()) throw std::logic_error("no normal basis found");
}

std::optional<Elem> Tower::to_base(Elem x) const {
  if (x.v == 0) return Field::zero();
  const std::uint32_t l = ext_.log(x);
  if (l % log_step_ != 0) return std::nullopt;
  return from_log_step_[l / log_step_];
}

std::pair<Elem, Elem> Tower::norm_and_trace(Elem x) const {
  const auto n = to_base(norm(x));
  const auto t = to_base(trace(x));
  if (!n || !t) throw std::logic_error("norm or trace left the base field");
  return {*n, *t};
}

Elem Tower::phi_basis(std::span<const Elem> s) const {
  if (s.size() != r_) {
    throw std::invalid_argument("expected " + std::to_string(r_) + " coordinates, got " + std::to_string(s.size()));
  }
  Elem out = Field::zero();
  for (std::uint32_t j = 0; j < r_; ++j) {
    if (!base_.contains(s[j])) throw std::invalid_argument("coordinate outside the base field");
    out = ext_.add(out, ext_.mul(embed(s[j]), basis_[j]));
  }
  return out;
}

Matrix Tower::conjugate_matrix() const {
  Matrix m(r_, r_);
  for (std::uint32_t i = 0; i < r_; ++i) {
    for (std::uint32_t j = 0; j < r_; ++j) m(i, j) = basis_[(i + j) % r_];
  }
  return m;
}

std::vector<Elem> Tower::subfield_elements() const { return embed_; }

std::shared_ptr<const Tower> build_tower(std::uint32_t p, std::uint32_t m, std::uint32_t r, std::uint64_t cap) {
  return std::make_shared<const Tower>(p, m, r, cap);
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power, got " + std::to_string(q));
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  std::uint64_t rest = q;
  std::uint32_t m = 0;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw std::invalid_argument("q must be a prime power, got " + std::to_string(q));
  return {static_cast<std::uint32_t>(p), m};
}

std::shared_ptr<const Tower> build_tower_for_q(std::uint64_t q, std::uint32_t r, std::uint64_t cap) {
  const auto [p, m] = prime_power(q);
  return build_tower(p, m, r, cap);
}

void base_vector_from_index(const Tower& tower, std::uint64_t index, std::span<Elem> out) {
  const std::uint32_t q = tower.q();
  for (auto& e : out) {
    e = Elem{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
}

RowIdentityReport check_conjugate_matrix_rows(const Tower& tower) {
  RowIdentityReport report;
  const std::uint32_t r = tower.r();
  const Field& F = tower.ext();
  const Matrix mat = tower.conjugate_matrix();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < r; ++i) total *= tower.q();
  std::vector<Elem> s(r);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    base_vector_from_index(tower, idx, s);
    const Elem x = tower.phi_basis(s);
    for (std::uint32_t i = 0; i < r; ++i) {
      Elem row_value = Field::zero();
      for (std::uint32_t j = 0; j < r; ++j) row_value = F.add(row_value, F.mul(mat(i, j), tower.embed(s[j])));
      if (row_value != tower.frobenius(x, i)) {
        report.passed = false;
        report.counterexample = s;
        report.counterexample_row = i;
        report.vectors_checked = idx + 1;
        return report;
      }
    }
  }
  report.vectors_checked = total;
  return report;
}

}  // namespace normtrace
