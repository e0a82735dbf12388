#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "normtrace/curve.hpp"

using normtrace::Elem;
using normtrace::Point;

TEST_SUITE("curve") {
  TEST_CASE("points over F4 match brute force") {
    const auto c = normtrace::enumerate_affine(normtrace::build_tower_for_q(2, 2));
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> expected = {{0, 0}, {0, 1}, {1, 2}, {1, 3},
                                                                            {2, 2}, {2, 3}, {3, 2}, {3, 3}};
    REQUIRE(c->size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(c->points()[i].x.v == expected[i].first);
      CHECK(c->points()[i].y.v == expected[i].second);
    }
    CHECK(c->contains(Elem{0}, Elem{0}));
    CHECK(c->contains(Elem{1}, Elem{2}));
    CHECK_FALSE(c->contains(Elem{1}, Elem{0}));
  }

  TEST_CASE("point counts, fibers and ordering") {
    for (auto [q, r] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{{2, 2}, {3, 2}, {2, 3}, {4, 2}, {3, 3}, {5, 2}}) {
      CAPTURE(q);
      CAPTURE(r);
      const auto t = normtrace::build_tower_for_q(q, r);
      const auto c = normtrace::enumerate_affine(t);
      std::uint64_t Q = t->ext().order();
      CHECK(c->size() == Q * Q / q);
      CHECK(c->fiber_size() == Q / q);
      std::size_t brute = 0;
      for (std::uint32_t x = 0; x < Q; ++x)
        for (std::uint32_t y = 0; y < Q; ++y) brute += c->contains(Elem{x}, Elem{y});
      CHECK(brute == c->size());
      for (std::size_t i = 0; i < c->size(); ++i) {
        const Point pt = c->points()[i];
        REQUIRE(c->contains(pt.x, pt.y));
        REQUIRE(c->index_of(pt) == i);
        if (i > 0) REQUIRE(c->points()[i - 1] < pt);
      }
      CHECK_FALSE(c->index_of(Point{Elem{1}, Elem{0}}).has_value());
      for (const Elem v : t->subfield_elements()) CHECK(c->trace_fiber(v).size() == c->fiber_size());
    }
  }

  TEST_CASE("Hermitian projective points") {
    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
      CAPTURE(q);
      const auto t = normtrace::build_tower_for_q(q, 2);
      const auto c = normtrace::enumerate_affine(t);
      const auto pts = normtrace::hermitian_projective_points(*t);
      CHECK(pts.size() == q * q * q + 1);
      for (std::size_t i = 0; i < c->size(); ++i) {
        CHECK(pts[i].x == c->points()[i].x);
        CHECK(pts[i].y == c->points()[i].y);
        CHECK(pts[i].z.v == 1);
      }
      CHECK(pts.back().x.v == 0);
      CHECK(pts.back().y.v == 1);
      CHECK(pts.back().z.v == 0);
      const auto& F = t->ext();
      for (const auto& P : pts) {
        const Elem lhs = F.pow(P.x, q + 1);
        const Elem rhs = F.add(F.mul(F.pow(P.y, q), P.z), F.mul(P.y, F.pow(P.z, q)));
        CHECK(lhs == rhs);
      }
      std::set<normtrace::ProjectivePoint> unique(pts.begin(), pts.end());
      CHECK(unique.size() == pts.size());
    }
    CHECK_THROWS_AS(normtrace::hermitian_projective_points(*normtrace::build_tower_for_q(2, 3)), std::invalid_argument);
  }
}
