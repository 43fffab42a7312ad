#include "ncguard/algebra/matrix.hpp"

#include <algorithm>

#include "ncguard/errors.hpp"

namespace ncguard {

void Matrix::append_row(std::span<const Symbol> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw UsageError("append_row: width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void axpy(const Field& f, Symbol c, std::span<const Symbol> src, std::span<Symbol> dst) {
  if (c == 0) return;
  if (f.kind() == FieldKind::binary_extension) {
    if (c == 1) {
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
      return;
    }
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= f.mul(c, src[i]);
    return;
  }
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = f.add(dst[i], f.mul(c, src[i]));
}

Symbol dot(const Field& f, std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() != b.size()) throw UsageError("dot: length mismatch");
  Symbol acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

Echelon row_reduce(Matrix m, std::size_t pivot_cols) {
  Echelon out;
  if (m.rows() == 0) {
    out.reduced = std::move(m);
    return out;
  }
  const Field& f = *m.field();
  const std::size_t limit = std::min(pivot_cols, m.cols());
  std::vector<Symbol> scratch(m.cols());
  std::size_t next = 0;
  for (std::size_t col = 0; col < limit && next < m.rows(); ++col) {
    std::size_t pivot = next;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != next) std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(next).begin());

    const Symbol scale = f.inv(m.at(next, col));
    for (Symbol& v : m.row(next)) v = f.mul(v, scale);

    const auto pivot_row = m.row(next);
    std::copy(pivot_row.begin(), pivot_row.end(), scratch.begin());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == next) continue;
      const Symbol factor = m.at(r, col);
      if (factor != 0) axpy(f, f.neg(factor), scratch, m.row(r));
    }
    out.pivots.push_back(col);
    ++next;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

std::vector<std::vector<Symbol>> null_space(const Matrix& m) {
  const Field& f = *m.field();
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;

  std::vector<std::vector<Symbol>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Symbol> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivots[r]] = f.neg(e.reduced.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ncguard
