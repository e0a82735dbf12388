#include "normtrace/variety.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normtrace/parallel.hpp"

namespace normtrace {

VarietySpec make_variety_spec(std::shared_ptr<const Tower> tower, const UniPoly& f) {
  VarietySpec spec;
  spec.tower = std::move(tower);
  spec.f = f;
  const Tower& t = *spec.tower;
  const int deg = f.degree();
  for (int u = 1; u <= deg; ++u) {
    std::vector<Elem> row(t.r());
    for (std::uint32_t i = 0; i < t.r(); ++i) row[i] = t.frobenius(f.coeff(u), i);
    spec.conjugate_rows.push_back(std::move(row));
  }
  spec.trace_a0 = t.trace(f.coeff(0));
  return spec;
}

std::uint64_t count_intersections(const NormTraceCurve& curve, const Message& msg) {
  if (msg.b.v == 0) throw std::invalid_argument("count_intersections needs b != 0");
  const Tower& t = curve.tower();
  const Field& F = t.ext();
  const UniPoly f = msg.f();
  const Elem binv = F.inv(msg.b);
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x < F.order(); ++x) {
    if (t.norm(Elem{x}) == t.trace(F.mul(f.evaluate(F, Elem{x}), binv))) ++count;
  }
  return count;
}

std::uint64_t count_S_points(const VarietySpec& spec, unsigned workers) {
  const Tower& t = *spec.tower;
  const Field& F = t.ext();
  const std::uint64_t total = F.order();  // q^r vectors s
  constexpr std::uint64_t kChunk = 4096;
  const std::size_t chunks = chunk_count_for(total, kChunk);
  std::vector<std::uint64_t> partial(chunks, 0);
  for_each_chunk(chunks, workers, [&](std::size_t c) {
    std::vector<Elem> s(t.r());
    const auto range = chunk_range(total, kChunk, c);
    for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
      base_vector_from_index(t, idx, s);
      const Elem x = t.phi_basis(s);
      if (t.norm(x) == t.trace(spec.f.evaluate(F, x))) ++partial[c];
    }
  });
  std::uint64_t count = 0;
  for (auto v : partial) count += v;
  return count;
}

Elem vkr_evaluate(const VarietySpec& spec, std::span<const Elem> X) {
  const Tower& t = *spec.tower;
  const Field& F = t.ext();
  if (X.size() != t.r()) throw std::invalid_argument("vkr_evaluate needs r variables");
  Elem prod = Field::one();
  for (Elem xi : X) prod = F.mul(prod, xi);
  Elem acc = F.add(F.neg(prod), spec.trace_a0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    Elem power = Field::one();
    for (const auto& row : spec.conjugate_rows) {
      power = F.mul(power, X[i]);
      acc = F.add(acc, F.mul(row[i], power));
    }
  }
  return acc;
}

EquivalenceReport equivalence_check(const VarietySpec& spec) {
  const Tower& t = *spec.tower;
  const Field& F = t.ext();
  const std::uint32_t r = t.r();
  EquivalenceReport rep;

  std::vector<Elem> X(r);
  for (std::uint32_t xv = 0; xv < F.order(); ++xv) {
    const Elem x{xv};
    const Elem direct = F.sub(t.trace(spec.f.evaluate(F, x)), t.norm(x));
    if (direct.v == 0) ++rep.intersections;
    for (std::uint32_t i = 0; i < r; ++i) X[i] = t.frobenius(x, i);
    const Elem v = vkr_evaluate(spec, X);
    if (v.v == 0) ++rep.orbit_zeros;
    if (v != direct) ++rep.orbit_identity_failures;
  }

  rep.s_points = count_S_points(spec);

  const Matrix M = t.conjugate_matrix();
  std::vector<Elem> s(r);
  for (std::uint64_t idx = 0; idx < F.order(); ++idx) {
    base_vector_from_index(t, idx, s);
    for (std::uint32_t i = 0; i < r; ++i) {
      Elem acc = Field::zero();
      for (std::uint32_t j = 0; j < r; ++j) acc = F.add(acc, F.mul(M(i, j), t.embed(s[j])));
      X[i] = acc;
    }
    if (vkr_evaluate(spec, X).v == 0) ++rep.psi_zeros;
  }

  rep.row_identity = check_conjugate_matrix_rows(t);
  rep.passed = rep.intersections == rep.s_points && rep.orbit_zeros == rep.s_points &&
               rep.psi_zeros == rep.s_points && rep.orbit_identity_failures == 0 && rep.row_identity.passed;
  return rep;
}

std::string_view to_string(BoundTheorem t) {
  switch (t) {
    case BoundTheorem::lang_weil:
      return "lang_weil";
    case BoundTheorem::cafure_matera:
      return "cafure_matera";
    case BoundTheorem::prop_general:
      return "prop_general";
  }
  return "unknown";
}

std::string_view to_string(BoundSign s) { return s == BoundSign::printed ? "printed" : "corrected"; }

BoundReport bound_window(std::uint64_t q, unsigned r, unsigned k, BoundTheorem theorem, BoundSign variant,
                         long double C) {
  if (r < 2) throw std::invalid_argument("r must be at least 2");
  BoundReport rep;
  rep.theorem = theorem;
  rep.variant = variant;
  rep.q = q;
  rep.r = r;
  rep.k = k;
  rep.n = r - 1;
  rep.d = std::max(k, r);
  rep.hypothesis_met = cafure_matera_hypothesis(q, r, k);
  rep.cases_met = irreducibility_case_met(k, r, prime_power(q).first);

  const long double Q = static_cast<long double>(q);
  const long double n = rep.n;
  const long double d = rep.d;
  const long double qn = std::pow(Q, n);
  const long double quad = (d - 1) * (d - 2);
  rep.constant = theorem == BoundTheorem::lang_weil ? C : 5.0L * std::pow(d, 13.0L / 3.0L);

  if (theorem == BoundTheorem::prop_general) {
    const long double tail = rep.constant * std::pow(Q, n - 1);
    rep.delta = quad * std::pow(Q, n - 0.5L) + (variant == BoundSign::corrected ? tail : -tail);
    rep.lower_value = qn - rep.delta;
  } else {
    rep.delta = quad * std::pow(Q, n - 0.5L) + rep.constant * std::pow(Q, n - 1);
    rep.lower_value = qn - rep.delta;
    rep.upper_value = qn + rep.delta;
    rep.upper = static_cast<std::int64_t>(std::ceil(*rep.upper_value));
    rep.degenerate = rep.delta == 0;
  }
  const long double lo = std::floor(rep.lower_value);
  rep.lower = lo <= 0 ? 0 : static_cast<std::int64_t>(lo);
  return rep;
}

void attach_count(BoundReport& report, std::uint64_t count) {
  report.count = count;
  const auto c = static_cast<std::int64_t>(count);
  report.holds = c >= report.lower && (!report.upper || c <= *report.upper);
}

UniPoly random_poly(const Field& field, unsigned k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> any(0, field.order() - 1);
  std::uniform_int_distribution<std::uint32_t> nonzero(1, field.order() - 1);
  std::vector<Elem> a(k + 1);
  for (unsigned i = 0; i < k; ++i) a[i] = Elem{any(rng)};
  a[k] = Elem{nonzero(rng)};
  return UniPoly(std::move(a));
}

}  // namespace normtrace
