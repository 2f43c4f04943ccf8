#include "hbl/subspace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hbl {

Subspace Subspace::zero(int n) {
  Subspace s;
  s.ambient = n;
  s.basis = RatMatrix(0, n);
  return s;
}

Subspace Subspace::full(int n) {
  Subspace s;
  s.ambient = n;
  s.basis = RatMatrix::identity(n);
  return s;
}

Subspace Subspace::row_space(const RatMatrix& rows) {
  Subspace s;
  s.ambient = rows.cols;
  s.basis = rows;
  s.basis.rref();
  return s;
}

Subspace Subspace::span(const std::vector<std::vector<Rat>>& rows, int ambient) {
  if (rows.empty()) return zero(ambient);
  RatMatrix m = RatMatrix::from_rows(rows);
  if (m.cols != ambient) throw input_error("span: vector length != ambient dimension");
  return row_space(m);
}

Subspace canonicalize(const RatMatrix& rows, int ambient) {
  if (rows.rows == 0) return Subspace::zero(ambient);
  if (rows.cols != ambient) throw input_error("canonicalize: column count != ambient dimension");
  return Subspace::row_space(rows);
}

bool Subspace::contains(const Subspace& o) const {
  if (ambient != o.ambient) throw input_error("contains: ambient mismatch");
  if (o.dim() > dim()) return false;
  if (o.is_zero()) return true;
  return RatMatrix::vstack(basis, o.basis).rank() == dim();
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient != o.ambient) throw input_error("sum: ambient mismatch");
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  return row_space(RatMatrix::vstack(basis, o.basis));
}

Subspace Subspace::annihilator() const {
  if (is_zero()) return full(ambient);
  Subspace s;
  s.ambient = ambient;
  s.basis = basis.null_space();
  return s;
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient != o.ambient) throw input_error("intersect: ambient mismatch");
  // V cap W = annihilator of (V^perp + W^perp); exact, no projections.
  const Subspace av = annihilator(), aw = o.annihilator();
  const RatMatrix stacked = RatMatrix::vstack(av.basis, aw.basis);
  if (stacked.rows == 0) return full(ambient);
  Subspace s;
  s.ambient = ambient;
  s.basis = stacked.null_space();
  return s;
}

std::string Subspace::str() const {
  std::ostringstream os;
  os << "{";
  for (int i = 0; i < basis.rows; ++i) {
    if (i) os << ",";
    os << "[";
    for (int j = 0; j < basis.cols; ++j) {
      if (j) os << ",";
      os << rat_str(basis.at(i, j));
    }
    os << "]";
  }
  os << "}";
  return os.str();
}

bool Subspace::operator<(const Subspace& o) const {
  if (ambient != o.ambient) return ambient < o.ambient;
  if (dim() != o.dim()) return dim() < o.dim();
  return lex_less(basis, o.basis);
}

int image_dim(const RatMatrix& L, const Subspace& v) {
  if (L.cols != v.ambient) throw input_error("image_dim: map and subspace dimension mismatch");
  if (v.is_zero()) return 0;
  return v.basis.mul(L.transpose()).rank();
}

Subspace kernel(const RatMatrix& L) {
  Subspace s;
  s.ambient = L.cols;
  s.basis = L.null_space();
  return s;
}

bool is_chain(const std::vector<Subspace>& list) {
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = i + 1; j < list.size(); ++j)
      if (!list[i].contains(list[j]) && !list[j].contains(list[i])) return false;
  return true;
}

std::vector<Subspace> closure_flag_plus_one(const Subspace& v, const std::vector<Subspace>& flag) {
  if (!is_chain(flag)) throw input_error("closure_flag_plus_one: flag is not a chain");
  std::set<Subspace> cl;
  cl.insert(v);
  for (const auto& w : flag) cl.insert(w);
  // Fixpoint under sum/intersection; finite by the chain structure.
  bool grew = true;
  int guard = 0;
  while (grew) {
    if (++guard > 64) throw internal_error("closure_flag_plus_one: fixpoint runaway");
    grew = false;
    std::vector<Subspace> cur(cl.begin(), cl.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        if (cl.insert(cur[i].sum(cur[j])).second) grew = true;
        if (cl.insert(cur[i].intersect(cur[j])).second) grew = true;
      }
  }
  return std::vector<Subspace>(cl.begin(), cl.end());
}

}  // namespace hbl
