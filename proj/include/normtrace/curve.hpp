#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "normtrace/tower.hpp"

namespace normtrace {

struct Point {
  Elem x;
  Elem y;
  friend constexpr auto operator<=>(Point, Point) = default;
};

/// Affine F_{q^r}-points of N(x) = T(y), ordered by x then y. That order
/// defines the coordinates of every codeword.
class NormTraceCurve {
 public:
  explicit NormTraceCurve(std::shared_ptr<const Tower> tower);

  const Tower& tower() const { return *tower_; }
  const std::shared_ptr<const Tower>& tower_ptr() const { return tower_; }

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Number of points over each x, q^{r-1}.
  std::size_t fiber_size() const { return fiber_size_; }

  bool contains(Elem x, Elem y) const { return tower_->norm(x) == tower_->trace(y); }
  std::optional<std::size_t> index_of(Point pt) const;

  /// The y-values with T(y) = c, ascending. c is an F_{q^r} element of the subfield.
  std::span<const Elem> trace_fiber(Elem c) const;

 private:
  std::shared_ptr<const Tower> tower_;
  std::vector<Point> points_;
  std::size_t fiber_size_ = 0;
  std::vector<std::vector<Elem>> fibers_;      // by base-field index of the trace value
  std::vector<std::uint32_t> rank_in_fiber_;   // by y
};

std::shared_ptr<const NormTraceCurve> enumerate_affine(std::shared_ptr<const Tower> tower);

/// Projective point (x : y : z), normalised so that the last nonzero
/// coordinate is 1.
struct ProjectivePoint {
  Elem x;
  Elem y;
  Elem z;
  friend constexpr auto operator<=>(ProjectivePoint, ProjectivePoint) = default;
};

/// All points of x^{q+1} = y^q z + y z^q in P^2(F_{q^2}): the affine points in
/// curve order followed by the points at infinity. Requires r = 2.
std::vector<ProjectivePoint> hermitian_projective_points(const Tower& tower);

}  // namespace normtrace
