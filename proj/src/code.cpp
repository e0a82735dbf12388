#include "normtrace/code.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "normtrace/parallel.hpp"
#include "normtrace/projective.hpp"

namespace normtrace {

std::size_t Codeword::weight() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](Elem e) { return e.v != 0; }));
}

EvalCode::EvalCode(std::shared_ptr<const NormTraceCurve> curve, unsigned k) : curve_(std::move(curve)), k_(k) {
  const Tower& t = curve_->tower();
  std::uint64_t bound = 1;
  for (std::uint32_t i = 0; i + 1 < t.r(); ++i) bound *= t.q();
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (k >= bound) {
    throw std::invalid_argument("k = " + std::to_string(k) + " must be below q^(r-1) = " + std::to_string(bound));
  }
  if (k >= curve_->size()) throw std::invalid_argument("k must be below the number of affine points");

  const Field& F = t.ext();
  const auto pts = curve_->points();
  generator_ = Matrix(k + 2, pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    generator_(0, i) = pts[i].y;
    Elem power = Field::one();
    for (unsigned j = 0; j <= k; ++j) {
      generator_(1 + j, i) = power;
      power = F.mul(power, pts[i].x);
    }
  }
  basis_ = row_space_basis(F, generator_);
}

Codeword EvalCode::encode(const Message& msg) const {
  if (msg.a.size() != k_ + 1) throw std::invalid_argument("message needs k + 1 coefficients a_0..a_k");
  const Field& F = field();
  const UniPoly f = msg.f();
  Codeword out;
  out.source = msg;
  out.values.reserve(length());
  for (const Point& pt : curve_->points()) out.values.push_back(F.sub(F.mul(msg.b, pt.y), f.evaluate(F, pt.x)));
  return out;
}

std::size_t EvalCode::weight(const Message& msg) const {
  const Tower& t = tower();
  const Field& F = t.ext();
  const UniPoly f = msg.f();
  const std::size_t fiber = curve_->fiber_size();
  std::size_t zeros = 0;
  if (msg.b.v == 0) {
    for (std::uint32_t x = 0; x < F.order(); ++x) {
      if (f.evaluate(F, Elem{x}).v == 0) zeros += fiber;
    }
  } else {
    const Elem binv = F.inv(msg.b);
    for (std::uint32_t x = 0; x < F.order(); ++x) {
      const Elem y = F.mul(f.evaluate(F, Elem{x}), binv);
      if (t.trace(y) == t.norm(Elem{x})) ++zeros;
    }
  }
  return length() - zeros;
}

Message EvalCode::message_from_coordinates(std::span<const Elem> coords) const {
  if (coords.size() != message_length()) throw std::invalid_argument("message needs k + 2 coordinates");
  Message m;
  m.b = coords[0];
  m.a.assign(coords.begin() + 1, coords.end());
  return m;
}

std::vector<Elem> EvalCode::coordinates(const Message& msg) const {
  std::vector<Elem> out;
  out.push_back(msg.b);
  out.insert(out.end(), msg.a.begin(), msg.a.end());
  return out;
}

Spectrum weight_spectrum(const EvalCode& code, const SpectrumOptions& options) {
  const std::uint64_t order = code.field().order();
  const unsigned dim = code.message_length();
  const std::size_t n = code.length();
  constexpr std::uint64_t kChunk = 2048;

  std::vector<std::vector<std::uint64_t>> partial;
  if (options.mode == SampleMode::exhaustive) {
    const auto total_messages = checked_pow(order, dim);
    if (!total_messages || *total_messages > options.cap) {
      throw std::invalid_argument("exhaustive spectrum exceeds the enumeration cap");
    }
    // Weight is constant on scalar classes, so enumerate one representative
    // per class and weight it by the class size.
    const std::uint64_t classes = *projective_count(dim, order);
    const std::size_t chunks = chunk_count_for(classes, kChunk);
    partial.assign(chunks, {});
    for_each_chunk(chunks, options.workers, [&](std::size_t c) {
      std::vector<std::uint64_t> hist(n + 1, 0);
      std::vector<Elem> coords(dim);
      const auto range = chunk_range(classes, kChunk, c);
      for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
        projective_unrank(idx, order, coords);
        hist[code.weight(code.message_from_coordinates(coords))] += order - 1;
      }
      partial[c] = std::move(hist);
    });
  } else {
    const std::size_t chunks = chunk_count_for(options.samples, kChunk);
    partial.assign(chunks, {});
    for_each_chunk(chunks, options.workers, [&](std::size_t c) {
      std::vector<std::uint64_t> hist(n + 1, 0);
      auto rng = chunk_rng(options.seed, c);
      std::uniform_int_distribution<std::uint32_t> draw(0, static_cast<std::uint32_t>(order - 1));
      std::vector<Elem> coords(dim);
      const auto range = chunk_range(options.samples, kChunk, c);
      for (std::uint64_t i = range.begin; i < range.end; ++i) {
        for (auto& e : coords) e = Elem{draw(rng)};
        ++hist[code.weight(code.message_from_coordinates(coords))];
      }
      partial[c] = std::move(hist);
    });
  }

  std::vector<std::uint64_t> merged(n + 1, 0);
  for (const auto& hist : partial) {
    for (std::size_t w = 0; w <= n; ++w) merged[w] += hist[w];
  }
  if (options.mode == SampleMode::exhaustive) merged[0] += 1;
  Spectrum out;
  for (std::size_t w = 0; w <= n; ++w) {
    if (merged[w] != 0) out[w] = merged[w];
  }
  return out;
}

long double classical_bound_value(std::uint64_t q, unsigned r, unsigned k, unsigned s, BoundVariant variant) {
  const long double Q = static_cast<long double>(q);
  const long double R = r;
  const long double n = std::pow(Q, 2 * R - 1);
  const long double d = std::max(k, r);
  const long double c = 5.0L * std::pow(d, 13.0L / 3.0L);
  switch (variant) {
    case BoundVariant::bezout: {
      std::uint64_t qr = 1;
      std::uint64_t n_int = 1;
      for (unsigned i = 0; i < r; ++i) qr *= q;
      for (unsigned i = 0; i + 1 < 2 * r; ++i) n_int *= q;
      return static_cast<long double>(n_int) -
             static_cast<long double>(s) * static_cast<long double>((qr - 1) / (q - 1));
    }
    case BoundVariant::corollary_ii_as_printed: {
      const long double kk = k;
      return n - std::pow(Q, R) - c * std::pow(Q, R - 1) - (kk - 1) * (kk - 2) * std::pow(Q, (R - 1) / 2);
    }
    case BoundVariant::corollary_ii_cm_derived:
      return n - std::pow(Q, R - 1) - (d - 1) * (d - 2) * std::pow(Q, R - 1.5L) - c * std::pow(Q, R - 2);
  }
  throw std::invalid_argument("unknown bound variant");
}

std::int64_t classical_bound(std::uint64_t q, unsigned r, unsigned k, unsigned s, BoundVariant variant) {
  const long double v = std::floor(classical_bound_value(q, r, k, s, variant));
  return v <= 0 ? 0 : static_cast<std::int64_t>(v);
}

bool irreducibility_case_met(unsigned k, unsigned r, std::uint32_t p) {
  return (k > r && k % p != 0) || (k == r && r >= 4) || (k > 0 && k < r);
}

bool cafure_matera_hypothesis(std::uint64_t q, unsigned r, unsigned k) {
  const std::uint64_t d = std::max(k, r);
  return q > 2 * static_cast<std::uint64_t>(r) * d * d;
}

}  // namespace normtrace
