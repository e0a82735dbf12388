#include "normtrace/curve.hpp"

#include <stdexcept>

namespace normtrace {

NormTraceCurve::NormTraceCurve(std::shared_ptr<const Tower> tower) : tower_(std::move(tower)) {
  const Field& F = tower_->ext();
  const std::uint32_t n = F.order();
  fibers_.assign(tower_->q(), {});
  rank_in_fiber_.assign(n, 0);
  for (std::uint32_t y = 0; y < n; ++y) {
    const auto c = tower_->to_base(tower_->trace(Elem{y}));
    auto& fiber = fibers_[c->v];
    rank_in_fiber_[y] = static_cast<std::uint32_t>(fiber.size());
    fiber.push_back(Elem{y});
  }
  fiber_size_ = fibers_.front().size();
  for (const auto& fiber : fibers_) {
    if (fiber.size() != fiber_size_) throw std::logic_error("trace fibers have unequal sizes");
  }
  points_.reserve(static_cast<std::size_t>(n) * fiber_size_);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (Elem y : trace_fiber(tower_->norm(Elem{x}))) points_.push_back(Point{Elem{x}, y});
  }
}

std::span<const Elem> NormTraceCurve::trace_fiber(Elem c) const {
  const auto b = tower_->to_base(c);
  if (!b) throw std::invalid_argument("trace value outside the base field");
  return fibers_[b->v];
}

std::optional<std::size_t> NormTraceCurve::index_of(Point pt) const {
  const Field& F = tower_->ext();
  if (!F.contains(pt.x) || !F.contains(pt.y) || !contains(pt.x, pt.y)) return std::nullopt;
  return static_cast<std::size_t>(pt.x.v) * fiber_size_ + rank_in_fiber_[pt.y.v];
}

std::shared_ptr<const NormTraceCurve> enumerate_affine(std::shared_ptr<const Tower> tower) {
  return std::make_shared<const NormTraceCurve>(std::move(tower));
}

std::vector<ProjectivePoint> hermitian_projective_points(const Tower& tower) {
  if (tower.r() != 2) throw std::invalid_argument("the Hermitian curve needs r = 2");
  const Field& F = tower.ext();
  const std::uint64_t q = tower.q();
  const std::uint32_t n = F.order();
  auto lhs = [&](Elem x) { return F.pow(x, q + 1); };
  auto rhs = [&](Elem y, Elem z) { return F.add(F.mul(F.pow(y, q), z), F.mul(y, F.pow(z, q))); };

  // Bucket y by y^q + y so the affine scan is linear in the field size.
  std::vector<std::vector<Elem>> by_value(n);
  for (std::uint32_t y = 0; y < n; ++y) by_value[rhs(Elem{y}, Field::one()).v].push_back(Elem{y});

  std::vector<ProjectivePoint> out;
  for (std::uint32_t x = 0; x < n; ++x) {
    for (Elem y : by_value[lhs(Elem{x}).v]) out.push_back({Elem{x}, y, Field::one()});
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    if (lhs(Elem{x}) == rhs(Field::one(), Field::zero())) out.push_back({Elem{x}, Field::one(), Field::zero()});
  }
  if (lhs(Field::one()) == rhs(Field::zero(), Field::zero())) {
    out.push_back({Field::one(), Field::zero(), Field::zero()});
  }
  return out;
}

}  // namespace normtrace
