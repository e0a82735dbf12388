#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normtrace/code.hpp"
#include "normtrace/curve.hpp"

namespace normtrace {

/// Coefficients of X^2, Y^2, Z^2, XY, XZ, YZ.
using ConicCoeffs = std::array<Elem, 6>;
/// aX + bY + cZ.
using Line = std::array<Elem, 3>;

enum class ConicKind { irreducible, repeated_line, two_rational_lines, two_conjugate_lines };
enum class LineType { tangent, secant };

std::string_view to_string(ConicKind k);
std::string_view to_string(LineType t);

struct Conic {
  ConicCoeffs coeffs{};
  ConicKind kind = ConicKind::irreducible;
  /// One line for a repeated line, two for a rational pair, none otherwise.
  std::vector<Line> lines;
};

/// The projective Hermitian curve x^{q+1} = y^q z + y z^q over F_{q^2}, q odd,
/// with the tables the conic survey needs.
class HermitianPlane {
 public:
  explicit HermitianPlane(std::shared_ptr<const Tower> tower);

  const Tower& tower() const { return *tower_; }
  const Field& field() const { return tower_->ext(); }
  std::uint64_t q() const { return tower_->q(); }

  /// Affine points first (in curve order, z = 1), then points at infinity.
  std::span<const ProjectivePoint> points() const { return points_; }
  std::size_t affine_count() const { return affine_count_; }
  /// Monomials X^2, Y^2, Z^2, XY, XZ, YZ at each point.
  const std::array<Elem, 6>& monomials(std::size_t point) const { return monomials_[point]; }

  /// Number of projective points of H on the line.
  std::size_t line_size(const Line& line) const;

  const NormTraceCurve& curve() const { return *curve_; }
  /// Basis of the span of 1, x, y, x^2, xy, y^2 evaluated on the affine points.
  const Matrix& validation_basis() const { return basis_; }
  std::size_t validation_rank() const { return basis_.rows(); }

 private:
  std::shared_ptr<const Tower> tower_;
  std::shared_ptr<const NormTraceCurve> curve_;
  std::vector<ProjectivePoint> points_;
  std::size_t affine_count_ = 0;
  std::vector<std::array<Elem, 6>> monomials_;
  std::vector<std::uint32_t> line_sizes_;  // indexed by projective rank
  Matrix basis_;
};

Conic classify_conic(const HermitianPlane& ctx, const ConicCoeffs& coeffs);

/// Throws std::logic_error if the line meets H in neither 1 nor q+1 points.
LineType line_type(const HermitianPlane& ctx, const Line& line);

struct IntersectionSizes {
  std::size_t projective = 0;
  std::size_t affine = 0;
};

IntersectionSizes intersection_sizes(const HermitianPlane& ctx, const Conic& conic);

struct PatternReport {
  IntersectionSizes sizes;
  std::vector<std::string> compatible;
  bool violation = false;
};

PatternReport pattern_match(const HermitianPlane& ctx, const Conic& conic, const IntersectionSizes& sizes);

/// Irreducible with more than 4 points on H, or a product of two secants.
/// Projective sizes by default; `affine` uses the affine count instead.
/// Throws for q <= 7.
bool prop53_minimality_predicate(const HermitianPlane& ctx, const Conic& conic, const IntersectionSizes& sizes,
                                 bool affine = false);

/// Evaluation of the conic at the affine points of H.
std::vector<Elem> conic_codeword(const HermitianPlane& ctx, const ConicCoeffs& coeffs);

/// Finer label used for histograms: irreducible, repeated_tangent,
/// repeated_secant, two_tangents, tangent_secant, two_secants, conjugate_lines.
std::string shape_label(const HermitianPlane& ctx, const Conic& conic);

struct SurveyOptions {
  SampleMode mode = SampleMode::exhaustive;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t cap = std::uint64_t{1} << 28;
  bool validate = false;
  std::uint64_t max_recorded = 1000;
};

struct ConicRecord {
  Conic conic;
  std::string shape;
  PatternReport pattern;
  bool predicate_projective = false;
  bool predicate_affine = false;
  bool oracle_minimal = false;
  std::size_t kernel_dimension = 0;
};

struct SurveyReport {
  std::uint64_t q = 0;
  std::uint64_t conics = 0;
  /// (shape, projective size) -> count
  std::map<std::pair<std::string, std::size_t>, std::uint64_t> histogram;
  /// (shape, affine size) -> count
  std::map<std::pair<std::string, std::size_t>, std::uint64_t> affine_histogram;
  std::uint64_t violation_count = 0;
  /// First max_recorded violations in enumeration order.
  std::vector<ConicRecord> violations;
  bool validated = false;
  /// [predicate][oracle_minimal]
  std::array<std::array<std::uint64_t, 2>, 2> agreement_projective{};
  std::array<std::array<std::uint64_t, 2>, 2> agreement_affine{};
  /// Every conic where the projective predicate and the oracle differ.
  std::vector<ConicRecord> disagreements;
};

SurveyReport survey(const HermitianPlane& ctx, const SurveyOptions& options);

}  // namespace normtrace
