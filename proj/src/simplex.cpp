#include "hbl/simplex.hpp"

#include <algorithm>

#include "hbl/errors.hpp"

namespace hbl {

namespace {

// Standard-form tableau: rows of [A | b] with b >= 0, objective row last
// ([reduced costs | -value]). Column layout: original (split) variables,
// then slack/surplus, then artificials.
struct Tableau {
  int m = 0, n = 0;  // constraint rows, total columns excluding rhs
  std::vector<std::vector<Rat>> t;  // (m+1) x (n+1)
  std::vector<int> basis;           // size m

  Rat& at(int i, int j) { return t[i][j]; }

  void pivot(int r, int c) {
    const Rat inv = t[r][c];
    for (int j = 0; j <= n; ++j) t[r][j] /= inv;
    for (int i = 0; i <= m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      const Rat f = t[i][c];
      for (int j = 0; j <= n; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Bland: entering = lowest-index column with negative reduced cost;
  // leaving = min ratio, ties by lowest basis index. allowed(j) masks columns.
  template <class Allowed>
  LPStatus run(const Allowed& allowed, long long max_iters) {
    for (long long it = 0; it < max_iters; ++it) {
      int enter = -1;
      for (int j = 0; j < n; ++j)
        if (allowed(j) && t[m][j] < 0) { enter = j; break; }
      if (enter < 0) return LPStatus::Optimal;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rat ratio = t[i][n] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
    throw internal_error("simplex: iteration cap exceeded");
  }
};

}  // namespace

LPResult solve_lp(const LP& lp) {
  const int nv = lp.nvars;
  if (static_cast<int>(lp.c.size()) != nv) throw input_error("lp: objective size mismatch");
  for (const auto& r : lp.rows)
    if (static_cast<int>(r.a.size()) != nv) throw input_error("lp: row size mismatch");

  // Split free variables: x = x+ - x-.
  std::vector<int> neg_col(nv, -1);
  int ncols = nv;
  for (int j = 0; j < nv; ++j)
    if (!lp.is_free.empty() && lp.is_free[j]) neg_col[j] = ncols++;

  const int m = static_cast<int>(lp.rows.size());
  int nslack = 0;
  for (const auto& r : lp.rows)
    if (r.rel != LP::EQ) ++nslack;
  const int slack0 = ncols;
  const int art0 = ncols + nslack;
  const int ntot = art0 + m;  // one artificial per row keeps phase 1 uniform

  Tableau tb;
  tb.m = m;
  tb.n = ntot;
  tb.t.assign(m + 1, std::vector<Rat>(ntot + 1));
  tb.basis.assign(m, -1);

  int si = 0;
  for (int i = 0; i < m; ++i) {
    const auto& r = lp.rows[i];
    // Orient the row so rhs >= 0.
    const bool flip = r.b < 0;
    const Rat sgn = flip ? -1 : 1;
    for (int j = 0; j < nv; ++j) {
      tb.at(i, j) = sgn * r.a[j];
      if (neg_col[j] >= 0) tb.at(i, neg_col[j]) = -sgn * r.a[j];
    }
    if (r.rel != LP::EQ) {
      // LE gets +slack, GE gets -surplus (before any flip).
      Rat s = (r.rel == LP::LE) ? Rat(1) : Rat(-1);
      tb.at(i, slack0 + si) = sgn * s;
      ++si;
    }
    tb.at(i, art0 + i) = 1;
    tb.at(i, ntot) = sgn * r.b;
    tb.basis[i] = art0 + i;
  }

  // Phase 1: minimize sum of artificials.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= ntot; ++j)
      if (j < art0 || j == ntot) tb.at(m, j) -= tb.at(i, j);
  const long long cap = 100000 + 200LL * (m + 1) * (ntot + 1);
  LPStatus st = tb.run([](int) { return true; }, cap);
  if (st != LPStatus::Optimal) throw internal_error("simplex: phase 1 cannot be unbounded");
  if (tb.at(m, ntot) != 0) return {LPStatus::Infeasible, Rat(0), {}};

  // Remove artificials from the basis (pivot out or mark the row redundant).
  std::vector<char> row_live(m, 1);
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < art0) continue;
    int c = -1;
    for (int j = 0; j < art0; ++j)
      if (tb.at(i, j) != 0) { c = j; break; }
    if (c >= 0)
      tb.pivot(i, c);
    else
      row_live[i] = 0;  // redundant constraint
  }

  // Phase 2 objective: minimize cost (negate for maximize).
  for (int j = 0; j <= ntot; ++j) tb.at(m, j) = 0;
  for (int j = 0; j < nv; ++j) {
    Rat cj = lp.maximize ? Rat(-lp.c[j]) : lp.c[j];
    tb.at(m, j) = cj;
    if (neg_col[j] >= 0) tb.at(m, neg_col[j]) = -cj;
  }
  for (int i = 0; i < m; ++i) {
    if (!row_live[i] || tb.at(m, tb.basis[i]) == 0) continue;
    const Rat f = tb.at(m, tb.basis[i]);
    for (int j = 0; j <= ntot; ++j) tb.at(m, j) -= f * tb.at(i, j);
  }

  auto allowed = [&](int j) { return j < art0; };
  st = tb.run(allowed, cap);
  if (st == LPStatus::Unbounded) return {LPStatus::Unbounded, Rat(0), {}};

  std::vector<Rat> full(ntot);
  for (int i = 0; i < m; ++i)
    if (row_live[i] && tb.basis[i] < ntot) full[tb.basis[i]] = tb.at(i, ntot);
  std::vector<Rat> x(nv);
  for (int j = 0; j < nv; ++j) {
    x[j] = full[j];
    if (neg_col[j] >= 0) x[j] -= full[neg_col[j]];
  }
  Rat val = 0;
  for (int j = 0; j < nv; ++j) val += lp.c[j] * x[j];
  return {LPStatus::Optimal, val, x};
}

}  // namespace hbl
