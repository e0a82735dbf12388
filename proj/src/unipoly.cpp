#include "normtrace/unipoly.hpp"

#include <stdexcept>

namespace normtrace {

int UniPoly::degree() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].v != 0) return static_cast<int>(i);
  }
  return kDegreeNegInf;
}

UniPoly UniPoly::scaled(const Field& f, Elem c) const {
  std::vector<Elem> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = f.mul(c, coeffs_[i]);
  return UniPoly(std::move(out));
}

RootSet distinct_roots_in_field(const Field& field, const UniPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("the zero polynomial vanishes everywhere");
  RootSet out;
  for (std::uint32_t x = 0; x < field.order(); ++x) {
    if (f.evaluate(field, Elem{x}).v == 0) out.roots.push_back(Elem{x});
  }
  out.all_distinct = static_cast<int>(out.roots.size()) == f.degree();
  return out;
}

}  // namespace normtrace
