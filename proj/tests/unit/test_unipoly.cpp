#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "normtrace/unipoly.hpp"

using normtrace::Elem;
using normtrace::Field;
using normtrace::UniPoly;
using testutil::elems;

TEST_SUITE("unipoly") {
  TEST_CASE("degree") {
    CHECK(UniPoly(elems({1, 0, 2, 0})).degree() == 2);
    CHECK(UniPoly(elems({0, 0})).degree() == normtrace::kDegreeNegInf);
    CHECK(UniPoly().is_zero());
    CHECK(UniPoly(elems({3})).degree() == 0);
  }

  TEST_CASE("evaluation over F4") {
    const Field f(2, 2);
    const UniPoly g(elems({1, 0, 1}));  // x^2 + 1
    CHECK(g.evaluate(f, Elem{2}).v == 2);
    CHECK(g.evaluate(f, Elem{1}).v == 0);
    CHECK(UniPoly(elems({0, 1})).evaluate(f, Elem{2}).v == 2);
  }

  TEST_CASE("evaluation matches power sums") {
    const Field f(3, 2);
    const UniPoly g(elems({5, 0, 7, 1}));
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      Elem expect = Field::zero();
      for (std::size_t i = 0; i < g.coeffs().size(); ++i) expect = f.add(expect, f.mul(g.coeff(i), f.pow(Elem{a}, i)));
      CHECK(g.evaluate(f, Elem{a}) == expect);
    }
  }

  TEST_CASE("roots") {
    const Field f(2, 2);
    const auto r1 = normtrace::distinct_roots_in_field(f, UniPoly(elems({0, 1, 1})));  // x^2 + x
    CHECK(r1.roots == elems({0, 1}));
    CHECK(r1.all_distinct);
    const auto r2 = normtrace::distinct_roots_in_field(f, UniPoly(elems({0, 0, 1})));  // x^2
    CHECK(r2.roots == elems({0}));
    CHECK_FALSE(r2.all_distinct);
    const auto r3 = normtrace::distinct_roots_in_field(f, UniPoly(elems({2, 1, 1})));  // x^2 + x + w
    CHECK(r3.roots.empty());
    CHECK_FALSE(r3.all_distinct);
    CHECK(normtrace::distinct_roots_in_field(f, UniPoly(elems({1}))).all_distinct);
    CHECK_THROWS_AS(normtrace::distinct_roots_in_field(f, UniPoly(elems({0, 0}))), std::invalid_argument);
  }

  TEST_CASE("roots are exactly the zeros and invariant under scaling") {
    const Field f(5, 2);
    const UniPoly g(elems({0, 6, 2, 1}));
    const auto r = normtrace::distinct_roots_in_field(f, g);
    std::vector<Elem> zeros;
    for (std::uint32_t a = 0; a < f.order(); ++a)
      if (g.evaluate(f, Elem{a}).v == 0) zeros.push_back(Elem{a});
    CHECK(r.roots == zeros);
    for (std::uint32_t c = 1; c < f.order(); ++c) {
      const auto s = normtrace::distinct_roots_in_field(f, g.scaled(f, Elem{c}));
      CHECK(s.roots == r.roots);
      CHECK(s.all_distinct == r.all_distinct);
      CHECK(g.scaled(f, Elem{c}).degree() == g.degree());
    }
  }
}
