#include "hbl/matrix.hpp"

#include <utility>

namespace hbl {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& r) {
  if (r.empty()) return RatMatrix();
  RatMatrix m(static_cast<int>(r.size()), static_cast<int>(r[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(r[i].size()) != m.cols) throw input_error("ragged matrix rows");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = r[i][j];
  }
  return m;
}

RatMatrix RatMatrix::vstack(const RatMatrix& top, const RatMatrix& bottom) {
  if (top.rows == 0) return bottom;
  if (bottom.rows == 0) return top;
  if (top.cols != bottom.cols) throw input_error("vstack: column mismatch");
  RatMatrix m(top.rows + bottom.rows, top.cols);
  std::copy(top.a.begin(), top.a.end(), m.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), m.a.begin() + top.a.size());
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatMatrix RatMatrix::mul(const RatMatrix& o) const {
  if (cols != o.rows) throw input_error("mul: dimension mismatch");
  RatMatrix m(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Rat& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols; ++j) m.at(i, j) += v * o.at(k, j);
    }
  return m;
}

std::vector<Rat> RatMatrix::row(int i) const {
  return std::vector<Rat>(a.begin() + static_cast<size_t>(i) * cols,
                          a.begin() + static_cast<size_t>(i + 1) * cols);
}

std::vector<int> RatMatrix::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
    const Rat inv = at(r, c);
    for (int j = c; j < cols; ++j) at(r, j) /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const Rat f = at(i, c);
      for (int j = c; j < cols; ++j) at(i, j) -= f * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  rows = r;
  a.resize(static_cast<size_t>(r) * cols);
  return pivots;
}

int RatMatrix::rank() const {
  RatMatrix c = *this;
  return static_cast<int>(c.rref().size());
}

RatMatrix RatMatrix::null_space() const {
  RatMatrix r = *this;
  std::vector<int> piv = r.rref();
  std::vector<char> is_piv(cols, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<std::vector<Rat>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(cols);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r.at(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return RatMatrix(0, cols);
  RatMatrix n = RatMatrix::from_rows(basis);
  n.rref();
  return n;
}

Rat RatMatrix::det() const {
  if (rows != cols) throw input_error("det: matrix not square");
  RatMatrix m = *this;
  Rat d = 1;
  for (int c = 0; c < m.cols; ++c) {
    int p = -1;
    for (int i = c; i < m.rows; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    const Rat inv = m.at(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      const Rat f = m.at(i, c) / inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

bool lex_less(const RatMatrix& x, const RatMatrix& y) {
  if (x.rows != y.rows) return x.rows < y.rows;
  if (x.cols != y.cols) return x.cols < y.cols;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (x.a[i] != y.a[i]) return x.a[i] < y.a[i];
  return false;
}

std::vector<Rat> solve_square(const RatMatrix& M, const std::vector<Rat>& b) {
  if (M.rows != M.cols || static_cast<int>(b.size()) != M.rows)
    throw input_error("solve_square: shape mismatch");
  const int n = M.rows;
  RatMatrix aug(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, n) = b[i];
  }
  std::vector<int> piv = aug.rref();
  if (static_cast<int>(piv.size()) != n || piv.back() == n) return {};
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[piv[i]] = aug.at(i, n);
  return x;
}

}  // namespace hbl
