#include "normtrace/field.hpp"

#include <stdexcept>
#include <string>

namespace normtrace {
namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial f, coefficients in F_p.
Poly poly_rem(Poly a, const Poly& f, std::uint32_t p) {
  const std::size_t df = f.size() - 1;
  trim(a);
  while (a.size() > df) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - df;
    if (c != 0) {
      for (std::size_t i = 0; i <= df; ++i) {
        const std::uint64_t sub = c * f[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == 0) continue;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_rem(std::move(out), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = poly_rem(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    e >>= 1;
    if (e > 0) base = poly_mulmod(base, base, f, p);
  }
  return result;
}

Poly digits_of(std::uint64_t index, std::uint32_t p, std::uint32_t n) {
  Poly d(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    d[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  trim(d);
  return d;
}

std::uint64_t index_of(const Poly& d, std::uint32_t p) {
  std::uint64_t index = 0;
  for (std::size_t i = d.size(); i-- > 0;) index = index * p + d[i];
  return index;
}

// Exhaustive trial division by every monic polynomial of degree <= deg(f)/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  std::uint64_t count = 1;
  for (std::uint32_t d = 1; d <= n / 2; ++d) {
    count *= p;
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      Poly g = digits_of(lower, p, d);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p, std::uint32_t degree, std::uint64_t cap) : p_(p), degree_(degree) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (degree == 0) throw std::invalid_argument("extension degree must be positive");
  const std::uint64_t hard_cap = std::uint64_t{1} << 31;
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < degree; ++i) {
    order *= p;
    if (order > cap || order > hard_cap) {
      throw std::invalid_argument("field of order " + std::to_string(p) + "^" + std::to_string(degree) +
                                  " exceeds the table cap");
    }
  }
  order_ = static_cast<std::uint32_t>(order);
  group_order_ = order_ - 1;

  // Lowest monic irreducible polynomial of the requested degree.
  const std::uint64_t lower_count = order;
  bool found = false;
  for (std::uint64_t lower = 0; lower < lower_count && !found; ++lower) {
    Poly f = digits_of(lower, p, degree);
    f.resize(degree + 1, 0);
    f[degree] = 1;
    if (is_irreducible(f, p)) {
      modulus_ = std::move(f);
      found = true;
    }
  }
  if (!found) throw std::logic_error("no irreducible polynomial found");

  // Smallest primitive element in enumeration order.
  const auto factors = prime_factors(group_order_);
  bool have_generator = false;
  for (std::uint64_t c = 1; c < order && !have_generator; ++c) {
    const Poly cand = digits_of(c, p, degree);
    bool primitive = true;
    for (std::uint64_t ell : factors) {
      const Poly r = poly_powmod(cand, group_order_ / ell, modulus_, p);
      if (r.size() == 1 && r[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = Elem{static_cast<std::uint32_t>(c)};
      have_generator = true;
    }
  }
  if (!have_generator) throw std::logic_error("no primitive element found");

  exp_.assign(2 * static_cast<std::size_t>(group_order_), 0);
  log_.assign(order_, kNoLog);
  const Poly g = digits_of(generator_.v, p, degree);
  Poly cur{1};
  for (std::uint32_t i = 0; i < group_order_; ++i) {
    const auto idx = static_cast<std::uint32_t>(index_of(cur, p));
    if (log_[idx] != kNoLog) throw std::logic_error("generator is not primitive");
    exp_[i] = idx;
    exp_[i + group_order_] = idx;
    log_[idx] = i;
    cur = poly_mulmod(cur, g, modulus_, p);
  }

  if (p_ != 2) {
    zech_.assign(group_order_, kNoLog);
    for (std::uint32_t d = 0; d < group_order_; ++d) {
      const std::uint32_t e = exp_[d];
      const std::uint32_t digit0 = e % p_;
      const std::uint32_t plus_one = e - digit0 + (digit0 + 1) % p_;
      zech_[d] = plus_one == 0 ? kNoLog : log_[plus_one];
    }
  }
}

Elem Field::inv(Elem a) const {
  if (a.v == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t la = log_[a.v];
  return Elem{exp_[la == 0 ? 0 : group_order_ - la]};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (a.v == 0) return e == 0 ? one() : zero();
  const std::uint64_t l = log_[a.v];
  return Elem{exp_[(l * (e % group_order_)) % group_order_]};
}

Elem Field::sqrt(Elem a, bool& ok) const {
  ok = true;
  if (a.v == 0) return a;
  if (p_ == 2) return pow(a, order_ / 2);
  const std::uint32_t l = log_[a.v];
  if (l % 2 != 0) {
    ok = false;
    return zero();
  }
  return Elem{exp_[l / 2]};
}

Elem Field::from_int(std::int64_t x) const {
  const std::int64_t p = p_;
  return Elem{static_cast<std::uint32_t>(((x % p) + p) % p)};
}

Elem Field::element(std::uint64_t index) const {
  if (index >= order_) throw std::out_of_range("element index outside the field");
  return Elem{static_cast<std::uint32_t>(index)};
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> out(degree_, 0);
  std::uint32_t v = a.v;
  for (std::uint32_t i = 0; i < degree_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
  return out;
}

Elem Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > degree_) throw std::invalid_argument("too many coefficients");
  std::uint64_t index = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw std::invalid_argument("coefficient outside F_p");
    index = index * p_ + coeffs[i];
  }
  return Elem{static_cast<std::uint32_t>(index)};
}

}  // namespace normtrace
