#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "normtrace/code.hpp"

namespace normtrace {

/// Packed set of nonzero coordinate positions.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::span<const Elem> values);

  std::size_t size() const { return size_; }
  std::size_t weight() const { return weight_; }
  bool contains(std::size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1u; }
  /// this ⊆ other
  bool subset_of(const SupportSet& other) const;

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t size_ = 0;
  std::size_t weight_ = 0;
};

/// Supp(c_prime) ⊆ Supp(c).
bool covers(const Codeword& c, const Codeword& c_prime);

enum class MinimalityMethod { kernel, scan };

struct MinimalityVerdict {
  bool is_minimal = false;
  MinimalityMethod method = MinimalityMethod::kernel;
  /// Dimension of the subcode vanishing on the zeros of c (kernel method).
  std::size_t kernel_dimension = 0;
  /// Minimal verdicts from the kernel method: basis coordinates spanning the
  /// one-dimensional subcode.
  std::vector<Elem> certificate;
  /// Non-minimal verdicts: a codeword not proportional to c whose support
  /// lies inside Supp(c).
  std::vector<Elem> covered;
};

/// Minimality of `codeword` in the row space of `basis` (independent rows):
/// minimal iff the codewords vanishing on its zero set form a 1-dimensional
/// space.
MinimalityVerdict kernel_minimality(const Field& field, const Matrix& basis, std::span<const Elem> codeword);

/// Same question answered by scanning every projective codeword class for a
/// non-proportional codeword with smaller or equal support.
MinimalityVerdict scan_minimality(const Field& field, const Matrix& basis, std::span<const Elem> codeword,
                                  std::uint64_t cap = std::uint64_t{1} << 24);

MinimalityVerdict is_minimal(const EvalCode& code, const Codeword& c, MinimalityMethod method);

/// Re-checks the witness carried by a verdict.
bool verdict_replays(const Field& field, const Matrix& basis, std::span<const Elem> codeword,
                     const MinimalityVerdict& verdict);

struct MinimalEntry {
  std::vector<Elem> message;  // (b, a_0, ..., a_k), first nonzero entry 1
  std::size_t weight = 0;
  bool minimal = false;
};

struct EnumerateOptions {
  unsigned workers = 1;
  std::uint64_t cap = std::uint64_t{1} << 26;
};

/// One representative per scalar class of nonzero messages, in projective
/// enumeration order, flagged by the kernel method.
std::vector<MinimalEntry> enumerate_minimal(const EvalCode& code, const EnumerateOptions& options = {});

enum class MinimalClass { class_i, class_ii, class_iii, predicted_nonminimal, outside_hypotheses };

std::string_view to_string(MinimalClass c);

struct ClassPrediction {
  /// Prediction when the standing hypotheses (3 < k < #points) hold,
  /// otherwise outside_hypotheses.
  MinimalClass label = MinimalClass::outside_hypotheses;
  /// What the classification rules give when applied regardless of k.
  MinimalClass shape = MinimalClass::predicted_nonminimal;
  /// deg(f / b) for b != 0, deg(f) for b = 0.
  int reduced_degree = kDegreeNegInf;
  /// Arithmetic conditions of class (i) on the reduced degree.
  bool side_conditions = false;
  /// Class (i) inequality with +5D^{13/3}q^{r-2}.
  bool inequality_printed = false;
  /// Class (i) inequality with -5D^{13/3}q^{r-2}.
  bool inequality_corrected = false;
  /// q > 2 r d^2, d = max(k, r).
  bool q_large = false;
};

ClassPrediction predicted_class(const Message& msg, const EvalCode& code);

/// Left-hand side of the class (i) inequality,
/// q^{r-1} - (D-1)(D-2) q^{r-3/2} +/- 5 D^{13/3} q^{r-2} with D = max(kbar, r).
long double class_i_margin(std::uint64_t q, unsigned r, unsigned kbar, bool printed_sign);

struct ClassificationRow {
  std::vector<Elem> message;
  ClassPrediction prediction;
  std::size_t weight = 0;
  bool oracle_minimal = false;
  /// Prediction agrees with the oracle; unset for outside_hypotheses.
  std::optional<bool> agree;
  bool shape_agree = false;
};

/// Rows of (label, oracle) counts; index [label][oracle_minimal].
using AgreementMatrix = std::array<std::array<std::uint64_t, 2>, 5>;

struct ClassificationReport {
  std::vector<ClassificationRow> rows;
  AgreementMatrix by_label{};
  AgreementMatrix by_shape{};
  /// Class (i) candidates (b != 0, reduced degree >= 1, side conditions met)
  /// tallied by [corrected inequality][oracle_minimal].
  std::array<std::array<std::uint64_t, 2>, 2> class_i_corrected{};
  std::uint64_t agreements = 0;
  std::uint64_t disagreements = 0;
};

struct ClassificationOptions {
  SampleMode mode = SampleMode::exhaustive;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t cap = std::uint64_t{1} << 24;
};

/// Predicted class vs kernel oracle for every projective class (exhaustive)
/// or for uniformly drawn classes (sampled).
ClassificationReport classification_report(const EvalCode& code, const ClassificationOptions& options);

/// Same comparison for an explicit list of messages, rows in input order.
ClassificationReport classify_messages(const EvalCode& code, std::span<const Message> messages, unsigned workers);

/// Seeded messages of a given shape: class_iii draws y - alpha, class_ii a
/// degree-k polynomial with k distinct roots, class_i draws y - f(x) with
/// uniform f until the shape is class_i.
std::vector<Message> sample_class_messages(const EvalCode& code, MinimalClass target, std::uint64_t count,
                                           std::uint64_t seed);

}  // namespace normtrace
