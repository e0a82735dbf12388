#pragma once

#include <random>
#include <vector>

#include "normtrace/code.hpp"
#include "normtrace/tower.hpp"

namespace testutil {

using normtrace::Elem;

inline std::vector<Elem> elems(std::initializer_list<std::uint32_t> v) {
  std::vector<Elem> out;
  for (auto x : v) out.push_back(Elem{x});
  return out;
}

inline normtrace::EvalCode make_code(std::uint64_t q, std::uint32_t r, unsigned k) {
  return normtrace::EvalCode(normtrace::enumerate_affine(normtrace::build_tower_for_q(q, r)), k);
}

inline normtrace::Message message(std::initializer_list<std::uint32_t> coords) {
  auto v = elems(coords);
  normtrace::Message m;
  m.b = v.front();
  m.a.assign(v.begin() + 1, v.end());
  return m;
}

}  // namespace testutil
