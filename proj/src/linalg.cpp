#include "normtrace/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace normtrace {

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

std::vector<std::size_t> row_reduce(const Field& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t sel = lead_row;
    while (sel < m.rows() && m(sel, col).v == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(lead_row, j));
    }
    const Elem scale = f.inv(m(lead_row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) = f.mul(m(lead_row, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row) continue;
      const Elem factor = m(i, col);
      if (factor.v == 0) continue;
      for (std::size_t j = col; j < m.cols(); ++j) {
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(lead_row, j)));
      }
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(const Field& f, Matrix m) { return row_reduce(f, m).size(); }

std::vector<std::vector<Elem>> nullspace(const Field& f, Matrix m) {
  const auto pivots = row_reduce(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), Field::zero());
    v[free] = Field::one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix row_space_basis(const Field& f, Matrix m) {
  const auto pivots = row_reduce(f, m);
  Matrix out(pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

std::vector<Elem> combine_rows(const Field& f, const Matrix& m, std::span<const Elem> coeffs) {
  if (coeffs.size() != m.rows()) throw std::invalid_argument("coefficient count does not match row count");
  std::vector<Elem> out(m.cols(), Field::zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (coeffs[i].v == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(coeffs[i], m(i, j)));
  }
  return out;
}

bool proportional(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) return false;
  std::size_t i = 0;
  while (i < a.size() && a[i].v == 0 && b[i].v == 0) ++i;
  if (i == a.size()) return true;
  if (a[i].v == 0 || b[i].v == 0) return false;
  const Elem ratio = f.div(b[i], a[i]);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (f.mul(ratio, a[j]) != b[j]) return false;
  }
  return true;
}

}  // namespace normtrace
