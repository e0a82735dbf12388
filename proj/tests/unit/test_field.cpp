#include <doctest.h>

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "normtrace/field.hpp"

using normtrace::Elem;
using normtrace::Field;

namespace {

// Schoolbook product of coefficient vectors reduced by the field modulus.
Elem slow_mul(const Field& f, Elem a, Elem b) {
  const auto A = f.coefficients(a);
  const auto B = f.coefficients(b);
  const auto& mod = f.modulus();
  const std::uint32_t p = f.characteristic();
  const std::size_t n = f.degree();
  std::vector<std::uint32_t> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + A[i] * B[j]) % p;
  for (std::size_t d = 2 * n - 1; d >= n; --d) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[d - n + i] = (prod[d - n + i] + (p - c) * mod[i]) % p;
  }
  prod.resize(n);
  return f.from_coefficients(prod);
}

}  // namespace

TEST_SUITE("fields") {
  TEST_CASE("moduli match the brute-force lowest irreducible") {
    const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> expected = {
        {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},       {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 0, 0, 0, 1}}, {{3, 2}, {1, 0, 1}},    {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 1, 0, 0, 1}}, {{5, 2}, {2, 0, 1}},          {{7, 2}, {1, 0, 1}},
    };
    for (const auto& [pn, mod] : expected) {
      CAPTURE(pn.first);
      CAPTURE(pn.second);
      CHECK(Field(pn.first, pn.second).modulus() == mod);
    }
  }

  TEST_CASE("smallest primitive element is the generator") {
    CHECK(Field(2, 2).generator().v == 2);
    CHECK(Field(2, 3).generator().v == 2);
    CHECK(Field(3, 2).generator().v == 4);
    CHECK(Field(5, 2).generator().v == 6);
  }

  TEST_CASE("F4 arithmetic") {
    const Field f(2, 2);
    const Elem w{2};
    CHECK(f.mul(w, w).v == 3);
    CHECK(f.add(w, Field::one()).v == 3);
    CHECK(f.mul(w, Elem{3}).v == 1);
    CHECK(f.inv(w).v == 3);
  }

  TEST_CASE("prime fields") {
    const Field f(7, 1);
    CHECK(f.order() == 7);
    CHECK(f.mul(Elem{3}, Elem{5}).v == 1);
    CHECK(f.add(Elem{4}, Elem{5}).v == 2);
    CHECK(f.neg(Elem{2}).v == 5);
    CHECK(f.from_int(-1).v == 6);
    CHECK(f.from_int(15).v == 1);
  }

  TEST_CASE("multiplication agrees with schoolbook reduction") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {3, 3}, {5, 2}, {2, 6}}) {
      const Field f(p, n);
      for (std::uint32_t a = 0; a < f.order(); ++a)
        for (std::uint32_t b = 0; b < f.order(); ++b) REQUIRE(f.mul(Elem{a}, Elem{b}) == slow_mul(f, Elem{a}, Elem{b}));
    }
  }

  TEST_CASE("addition is coefficientwise") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
      const Field f(p, n);
      for (std::uint32_t a = 0; a < f.order(); ++a)
        for (std::uint32_t b = 0; b < f.order(); ++b) {
          auto A = f.coefficients(Elem{a});
          const auto B = f.coefficients(Elem{b});
          for (std::size_t i = 0; i < A.size(); ++i) A[i] = (A[i] + B[i]) % p;
          REQUIRE(f.add(Elem{a}, Elem{b}) == f.from_coefficients(A));
        }
    }
  }

  TEST_CASE("field axioms") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {5, 1}, {2, 4}}) {
      const Field f(p, n);
      const std::uint32_t N = f.order();
      for (std::uint32_t a = 0; a < N; ++a) {
        const Elem x{a};
        REQUIRE(f.add(x, f.neg(x)) == Field::zero());
        REQUIRE(f.pow(x, N) == x);
        if (a != 0) REQUIRE(f.mul(x, f.inv(x)) == Field::one());
        for (std::uint32_t b = 0; b < N; ++b) {
          const Elem y{b};
          REQUIRE(f.add(x, y) == f.add(y, x));
          REQUIRE(f.mul(x, y) == f.mul(y, x));
          for (std::uint32_t c = 0; c < N; ++c) {
            const Elem z{c};
            REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
            REQUIRE(f.add(x, f.add(y, z)) == f.add(f.add(x, y), z));
            REQUIRE(f.mul(x, f.mul(y, z)) == f.mul(f.mul(x, y), z));
          }
        }
      }
    }
  }

  TEST_CASE("generator has full order") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 6}, {3, 4}, {7, 2}}) {
      const Field f(p, n);
      std::set<std::uint32_t> seen;
      for (std::uint32_t i = 0; i < f.group_order(); ++i) seen.insert(f.exp(i).v);
      CHECK(seen.size() == f.group_order());
      CHECK(f.exp(f.group_order()) == Field::one());
    }
  }

  TEST_CASE("square roots") {
    const Field f(5, 2);
    std::size_t squares = 0;
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      bool ok = false;
      const Elem s = f.sqrt(Elem{a}, ok);
      CHECK(ok == f.is_square(Elem{a}));
      if (ok) {
        ++squares;
        CHECK(f.mul(s, s) == Elem{a});
      }
    }
    CHECK(squares == (f.order() - 1) / 2 + 1);
  }

  TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(Field(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(Field(2, 0), std::invalid_argument);
    CHECK_THROWS(Field(2, 30, 1u << 20));
    CHECK_THROWS_AS(Field(3, 2).inv(Field::zero()), std::domain_error);
  }

  TEST_CASE("element index round trip") {
    const Field f(3, 3);
    for (std::uint32_t a = 0; a < f.order(); ++a) CHECK(f.from_coefficients(f.coefficients(Elem{a})).v == a);
    CHECK(f.contains(Elem{26}));
    CHECK_FALSE(f.contains(Elem{27}));
  }
}
