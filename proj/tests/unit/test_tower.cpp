#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "normtrace/tower.hpp"

using normtrace::Elem;
using normtrace::Tower;

namespace {

struct Params {
  std::uint64_t q;
  std::uint32_t r;
};

const std::vector<Params> kTowers = {{2, 2}, {3, 2}, {2, 3}, {4, 2}, {3, 3}, {5, 2}};

}  // namespace

TEST_SUITE("tower") {
  TEST_CASE("normal basis generator matches brute force") {
    CHECK(normtrace::build_tower_for_q(2, 2)->alpha().v == 2);
    CHECK(normtrace::build_tower_for_q(3, 2)->alpha().v == 4);
    CHECK(normtrace::build_tower_for_q(2, 3)->alpha().v == 3);
    CHECK(normtrace::build_tower_for_q(4, 2)->alpha().v == 2);
  }

  TEST_CASE("F4 over F2") {
    const auto t = normtrace::build_tower_for_q(2, 2);
    const Elem w{2};
    CHECK(t->frobenius(w, 1).v == 3);
    CHECK(t->norm(w).v == 1);
    CHECK(t->trace(w).v == 1);
    const std::vector<Elem> s = {Elem{1}, Elem{1}};
    CHECK(t->phi_basis(s).v == 1);
  }

  TEST_CASE("trace-zero count in F25") {
    const auto t = normtrace::build_tower_for_q(5, 2);
    int zeros = 0;
    for (std::uint32_t a = 0; a < 25; ++a) zeros += t->trace(Elem{a}).v == 0;
    CHECK(zeros == 5);
  }

  TEST_CASE("frobenius, norm and trace") {
    for (const auto& prm : kTowers) {
      CAPTURE(prm.q);
      CAPTURE(prm.r);
      const auto t = normtrace::build_tower_for_q(prm.q, prm.r);
      const auto& F = t->ext();
      const std::uint64_t Q = F.order();
      std::map<std::uint32_t, std::size_t> norm_fiber, trace_fiber;
      for (std::uint32_t a = 0; a < Q; ++a) {
        const Elem x{a};
        REQUIRE(t->frobenius(x, 0) == x);
        REQUIRE(t->frobenius(x, prm.r) == x);
        REQUIRE(t->frobenius(x, 1) == F.pow(x, prm.q));
        Elem tr = normtrace::Field::zero();
        for (std::uint32_t i = 0; i < prm.r; ++i) tr = F.add(tr, t->frobenius(x, i));
        REQUIRE(t->trace(x) == tr);
        REQUIRE(t->norm(x) == F.pow(x, (Q - 1) / (prm.q - 1)));
        REQUIRE(t->in_subfield(t->norm(x)));
        REQUIRE(t->in_subfield(t->trace(x)));
        ++norm_fiber[t->norm(x).v];
        ++trace_fiber[t->trace(x).v];
      }
      CHECK(norm_fiber.size() == prm.q);
      CHECK(trace_fiber.size() == prm.q);
      for (const auto& [v, n] : norm_fiber) CHECK(n == (v == 0 ? 1 : (Q - 1) / (prm.q - 1)));
      for (const auto& [v, n] : trace_fiber) CHECK(n == Q / prm.q);
    }
  }

  TEST_CASE("norm is multiplicative and trace additive") {
    const auto t = normtrace::build_tower_for_q(3, 2);
    const auto& F = t->ext();
    for (std::uint32_t a = 0; a < F.order(); ++a)
      for (std::uint32_t b = 0; b < F.order(); ++b) {
        CHECK(t->norm(F.mul(Elem{a}, Elem{b})) == F.mul(t->norm(Elem{a}), t->norm(Elem{b})));
        CHECK(t->trace(F.add(Elem{a}, Elem{b})) == F.add(t->trace(Elem{a}), t->trace(Elem{b})));
      }
  }

  TEST_CASE("embedding is a field homomorphism onto the fixed field") {
    for (const auto& prm : kTowers) {
      const auto t = normtrace::build_tower_for_q(prm.q, prm.r);
      const auto& B = t->base();
      const auto& F = t->ext();
      std::set<std::uint32_t> image;
      for (std::uint32_t a = 0; a < B.order(); ++a) {
        image.insert(t->embed(Elem{a}).v);
        REQUIRE(t->to_base(t->embed(Elem{a})) == Elem{a});
        for (std::uint32_t b = 0; b < B.order(); ++b) {
          REQUIRE(t->embed(B.add(Elem{a}, Elem{b})) == F.add(t->embed(Elem{a}), t->embed(Elem{b})));
          REQUIRE(t->embed(B.mul(Elem{a}, Elem{b})) == F.mul(t->embed(Elem{a}), t->embed(Elem{b})));
        }
      }
      std::set<std::uint32_t> fixed;
      for (std::uint32_t x = 0; x < F.order(); ++x)
        if (t->frobenius(Elem{x}, 1) == Elem{x}) fixed.insert(x);
      CHECK(image == fixed);
      const auto subs = t->subfield_elements();
      CHECK(subs.size() == prm.q);
    }
  }

  TEST_CASE("phi_basis is a bijection and the row identity holds") {
    for (const auto& prm : kTowers) {
      const auto t = normtrace::build_tower_for_q(prm.q, prm.r);
      std::set<std::uint32_t> image;
      std::vector<Elem> s(prm.r);
      const std::uint64_t total = t->ext().order();
      for (std::uint64_t i = 0; i < total; ++i) {
        normtrace::base_vector_from_index(*t, i, s);
        image.insert(t->phi_basis(s).v);
      }
      CHECK(image.size() == total);
      const auto report = normtrace::check_conjugate_matrix_rows(*t);
      CHECK(report.passed);
      CHECK(report.vectors_checked == total);
      const auto M = t->conjugate_matrix();
      CHECK(M.rows() == prm.r);
      CHECK(M(0, 0) == t->alpha());
    }
  }

  TEST_CASE("prime power parsing") {
    CHECK(normtrace::prime_power(9) == std::pair<std::uint32_t, std::uint32_t>{3, 2});
    CHECK(normtrace::prime_power(7) == std::pair<std::uint32_t, std::uint32_t>{7, 1});
    CHECK_THROWS_AS(normtrace::prime_power(12), std::invalid_argument);
    CHECK_THROWS_AS(normtrace::prime_power(1), std::invalid_argument);
    CHECK_THROWS_AS(normtrace::build_tower_for_q(6, 2), std::invalid_argument);
  }
}
