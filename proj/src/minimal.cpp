#include "normtrace/minimal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "normtrace/parallel.hpp"
#include "normtrace/projective.hpp"

namespace normtrace {

SupportSet::SupportSet(std::span<const Elem> values) : bits_((values.size() + 63) / 64, 0), size_(values.size()) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].v != 0) {
      bits_[i / 64] |= std::uint64_t{1} << (i % 64);
      ++weight_;
    }
  }
}

bool SupportSet::subset_of(const SupportSet& other) const {
  if (size_ != other.size_) throw std::invalid_argument("support sets of different lengths");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

bool covers(const Codeword& c, const Codeword& c_prime) {
  return SupportSet(c_prime.values).subset_of(SupportSet(c.values));
}

namespace {

std::vector<std::size_t> zero_positions(std::span<const Elem> codeword) {
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    if (codeword[i].v == 0) zeros.push_back(i);
  }
  return zeros;
}

void require_nonzero(std::span<const Elem> codeword) {
  if (std::all_of(codeword.begin(), codeword.end(), [](Elem e) { return e.v == 0; })) {
    throw std::invalid_argument("the zero codeword is not minimal by convention");
  }
}

}  // namespace

MinimalityVerdict kernel_minimality(const Field& field, const Matrix& basis, std::span<const Elem> codeword) {
  require_nonzero(codeword);
  const auto zeros = zero_positions(codeword);
  const auto kernel = nullspace(field, basis.select_columns(zeros).transposed());
  if (kernel.empty()) throw std::invalid_argument("codeword is not in the code");

  MinimalityVerdict verdict;
  verdict.method = MinimalityMethod::kernel;
  verdict.kernel_dimension = kernel.size();
  verdict.is_minimal = kernel.size() == 1;
  if (verdict.is_minimal) {
    verdict.certificate = kernel.front();
    return verdict;
  }
  for (const auto& coeffs : kernel) {
    auto w = combine_rows(field, basis, coeffs);
    if (!proportional(field, w, codeword)) {
      verdict.covered = std::move(w);
      return verdict;
    }
  }
  throw std::logic_error("kernel of dimension >= 2 without a non-proportional member");
}

MinimalityVerdict scan_minimality(const Field& field, const Matrix& basis, std::span<const Elem> codeword,
                                  std::uint64_t cap) {
  require_nonzero(codeword);
  const auto classes = projective_count(static_cast<unsigned>(basis.rows()), field.order());
  if (!classes || *classes > cap) throw std::invalid_argument("scan exceeds the enumeration cap");
  const SupportSet target(codeword);
  MinimalityVerdict verdict;
  verdict.method = MinimalityMethod::scan;
  std::vector<Elem> coeffs(basis.rows());
  for (std::uint64_t idx = 0; idx < *classes; ++idx) {
    projective_unrank(idx, field.order(), coeffs);
    auto w = combine_rows(field, basis, coeffs);
    if (SupportSet(w).subset_of(target) && !proportional(field, w, codeword)) {
      verdict.covered = std::move(w);
      return verdict;
    }
  }
  verdict.is_minimal = true;
  return verdict;
}

MinimalityVerdict is_minimal(const EvalCode& code, const Codeword& c, MinimalityMethod method) {
  if (c.values.size() != code.length()) throw std::invalid_argument("codeword length does not match the code");
  return method == MinimalityMethod::kernel ? kernel_minimality(code.field(), code.basis(), c.values)
                                            : scan_minimality(code.field(), code.basis(), c.values);
}

bool verdict_replays(const Field& field, const Matrix& basis, std::span<const Elem> codeword,
                     const MinimalityVerdict& verdict) {
  if (!verdict.is_minimal) {
    if (verdict.covered.size() != codeword.size()) return false;
    // The witness must lie in the code.
    if (rank(field, basis) != [&] {
          Matrix extended(basis.rows() + 1, basis.cols());
          for (std::size_t i = 0; i < basis.rows(); ++i) {
            for (std::size_t j = 0; j < basis.cols(); ++j) extended(i, j) = basis(i, j);
          }
          for (std::size_t j = 0; j < basis.cols(); ++j) extended(basis.rows(), j) = verdict.covered[j];
          return rank(field, extended);
        }()) {
      return false;
    }
    const bool is_zero =
        std::all_of(verdict.covered.begin(), verdict.covered.end(), [](Elem e) { return e.v == 0; });
    return !is_zero && SupportSet(verdict.covered).subset_of(SupportSet(codeword)) &&
           !proportional(field, verdict.covered, codeword);
  }
  if (verdict.method == MinimalityMethod::scan) return true;
  if (verdict.certificate.size() != basis.rows()) return false;
  const auto w = combine_rows(field, basis, verdict.certificate);
  const auto zeros = zero_positions(codeword);
  return proportional(field, w, codeword) && rank(field, basis.select_columns(zeros)) == basis.rows() - 1;
}

std::vector<MinimalEntry> enumerate_minimal(const EvalCode& code, const EnumerateOptions& options) {
  const unsigned dim = code.message_length();
  const std::uint64_t order = code.field().order();
  const auto classes = projective_count(dim, order);
  if (!classes || *classes > options.cap) throw std::invalid_argument("enumeration exceeds the cap");
  constexpr std::uint64_t kChunk = 256;
  const std::size_t chunks = chunk_count_for(*classes, kChunk);
  std::vector<std::vector<MinimalEntry>> partial(chunks);
  for_each_chunk(chunks, options.workers, [&](std::size_t c) {
    std::vector<Elem> coords(dim);
    const auto range = chunk_range(*classes, kChunk, c);
    for (std::uint64_t idx = range.begin; idx < range.end; ++idx) {
      projective_unrank(idx, order, coords);
      const Codeword cw = code.encode(code.message_from_coordinates(coords));
      const std::size_t w = cw.weight();
      if (w == 0) continue;
      partial[c].push_back({coords, w, kernel_minimality(code.field(), code.basis(), cw.values).is_minimal});
    }
  });
  std::vector<MinimalEntry> out;
  for (auto& part : partial) {
    for (auto& e : part) out.push_back(std::move(e));
  }
  return out;
}

std::string_view to_string(MinimalClass c) {
  switch (c) {
    case MinimalClass::class_i:
      return "class_i";
    case MinimalClass::class_ii:
      return "class_ii";
    case MinimalClass::class_iii:
      return "class_iii";
    case MinimalClass::predicted_nonminimal:
      return "predicted_nonminimal";
    case MinimalClass::outside_hypotheses:
      return "outside_hypotheses";
  }
  return "unknown";
}

long double class_i_margin(std::uint64_t q, unsigned r, unsigned kbar, bool printed_sign) {
  const long double Q = static_cast<long double>(q);
  const long double R = r;
  const long double D = std::max(kbar, r);
  const long double tail = 5.0L * std::pow(D, 13.0L / 3.0L) * std::pow(Q, R - 2);
  const long double head = std::pow(Q, R - 1) - (D - 1) * (D - 2) * std::pow(Q, R - 1.5L);
  return printed_sign ? head + tail : head - tail;
}

ClassPrediction predicted_class(const Message& msg, const EvalCode& code) {
  const Tower& t = code.tower();
  const Field& F = t.ext();
  const unsigned k = code.k();
  const unsigned r = t.r();
  ClassPrediction pred;
  pred.q_large = cafure_matera_hypothesis(t.q(), r, k);

  if (msg.b.v != 0) {
    const UniPoly g = msg.f().scaled(F, F.inv(msg.b));
    pred.reduced_degree = g.degree();
    if (pred.reduced_degree <= 0) {
      pred.shape = MinimalClass::class_iii;
    } else {
      const auto kbar = static_cast<unsigned>(pred.reduced_degree);
      pred.side_conditions = irreducibility_case_met(kbar, r, t.p());
      pred.inequality_printed = class_i_margin(t.q(), r, kbar, true) > static_cast<long double>(k);
      pred.inequality_corrected = class_i_margin(t.q(), r, kbar, false) > static_cast<long double>(k);
      pred.shape = pred.side_conditions && pred.inequality_printed ? MinimalClass::class_i
                                                                   : MinimalClass::predicted_nonminimal;
    }
  } else {
    const UniPoly f = msg.f();
    if (f.is_zero()) throw std::invalid_argument("the zero message has no class");
    pred.reduced_degree = f.degree();
    const bool distinct = distinct_roots_in_field(F, f).all_distinct;
    pred.shape = pred.reduced_degree == static_cast<int>(k) && distinct ? MinimalClass::class_ii
                                                                        : MinimalClass::predicted_nonminimal;
  }
  const bool hypotheses = k > 3 && k < code.length();
  pred.label = hypotheses ? pred.shape : MinimalClass::outside_hypotheses;
  return pred;
}

namespace {

std::optional<bool> agreement(MinimalClass c, bool oracle_minimal) {
  switch (c) {
    case MinimalClass::class_i:
    case MinimalClass::class_ii:
    case MinimalClass::class_iii:
      return oracle_minimal;
    case MinimalClass::predicted_nonminimal:
      return !oracle_minimal;
    case MinimalClass::outside_hypotheses:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

ClassificationReport classify_messages(const EvalCode& code, std::span<const Message> messages, unsigned workers) {
  constexpr std::uint64_t kChunk = 64;
  ClassificationReport report;
  report.rows.resize(messages.size());
  const std::size_t chunks = chunk_count_for(messages.size(), kChunk);
  for_each_chunk(chunks, workers, [&](std::size_t c) {
    const auto range = chunk_range(messages.size(), kChunk, c);
    for (std::uint64_t i = range.begin; i < range.end; ++i) {
      const Message& msg = messages[i];
      const Codeword cw = code.encode(msg);
      ClassificationRow row;
      row.message = code.coordinates(msg);
      row.prediction = predicted_class(msg, code);
      row.weight = cw.weight();
      row.oracle_minimal = kernel_minimality(code.field(), code.basis(), cw.values).is_minimal;
      row.agree = agreement(row.prediction.label, row.oracle_minimal);
      row.shape_agree = *agreement(row.prediction.shape, row.oracle_minimal);
      report.rows[i] = std::move(row);
    }
  });
  for (const auto& row : report.rows) {
    const int oracle = row.oracle_minimal ? 1 : 0;
    ++report.by_label[static_cast<int>(row.prediction.label)][oracle];
    ++report.by_shape[static_cast<int>(row.prediction.shape)][oracle];
    if (row.message[0].v != 0 && row.prediction.reduced_degree >= 1 && row.prediction.side_conditions) {
      ++report.class_i_corrected[row.prediction.inequality_corrected ? 1 : 0][oracle];
    }
    if (row.agree) {
      if (*row.agree) {
        ++report.agreements;
      } else {
        ++report.disagreements;
      }
    }
  }
  return report;
}

ClassificationReport classification_report(const EvalCode& code, const ClassificationOptions& options) {
  const unsigned dim = code.message_length();
  const std::uint64_t order = code.field().order();
  const auto classes = projective_count(dim, order);
  if (!classes) throw std::invalid_argument("message space too large");
  std::vector<Message> messages;
  std::vector<Elem> coords(dim);
  auto add = [&](std::uint64_t idx) {
    projective_unrank(idx, order, coords);
    Message msg = code.message_from_coordinates(coords);
    if (code.weight(msg) != 0) messages.push_back(std::move(msg));
  };
  if (options.mode == SampleMode::exhaustive) {
    if (*classes > options.cap) throw std::invalid_argument("classification exceeds the enumeration cap");
    for (std::uint64_t idx = 0; idx < *classes; ++idx) add(idx);
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> draw(0, *classes - 1);
    for (std::uint64_t i = 0; i < options.samples; ++i) add(draw(rng));
  }
  return classify_messages(code, messages, options.workers);
}

std::vector<Message> sample_class_messages(const EvalCode& code, MinimalClass target, std::uint64_t count,
                                           std::uint64_t seed) {
  const Field& F = code.field();
  const unsigned k = code.k();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> any(0, F.order() - 1);
  std::uniform_int_distribution<std::uint32_t> nonzero(1, F.order() - 1);
  std::vector<Message> out;
  out.reserve(count);

  switch (target) {
    case MinimalClass::class_iii:
      for (std::uint64_t i = 0; i < count; ++i) {
        Message m{Field::one(), std::vector<Elem>(k + 1, Field::zero())};
        m.a[0] = Elem{any(rng)};
        out.push_back(std::move(m));
      }
      return out;
    case MinimalClass::class_ii: {
      if (k > F.order()) throw std::invalid_argument("not enough field elements for k distinct roots");
      for (std::uint64_t i = 0; i < count; ++i) {
        std::vector<Elem> roots;
        while (roots.size() < k) {
          const Elem t{any(rng)};
          if (std::find(roots.begin(), roots.end(), t) == roots.end()) roots.push_back(t);
        }
        std::vector<Elem> poly{Elem{nonzero(rng)}};
        for (Elem t : roots) {
          // poly *= (x - t)
          std::vector<Elem> next(poly.size() + 1, Field::zero());
          for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] = F.add(next[j + 1], poly[j]);
            next[j] = F.sub(next[j], F.mul(t, poly[j]));
          }
          poly = std::move(next);
        }
        out.push_back(Message{Field::zero(), std::move(poly)});
      }
      return out;
    }
    case MinimalClass::class_i: {
      const std::uint64_t max_attempts = 1000 * std::max<std::uint64_t>(count, 1);
      std::uint64_t attempts = 0;
      while (out.size() < count) {
        if (++attempts > max_attempts) throw std::runtime_error("class (i) messages are too rare to sample");
        Message m{Field::one(), std::vector<Elem>(k + 1)};
        for (auto& a : m.a) a = Elem{any(rng)};
        if (predicted_class(m, code).shape == MinimalClass::class_i) out.push_back(std::move(m));
      }
      return out;
    }
    default:
      throw std::invalid_argument("can only sample class_i, class_ii or class_iii messages");
  }
}

}  // namespace normtrace
