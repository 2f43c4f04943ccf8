#include "hbl/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace hbl {

bool SubspaceList::contains(const Subspace& s) const {
  return std::find(entries.begin(), entries.end(), s) != entries.end();
}

SubspaceList generate_subspace_list(const HBLInstance& inst, int depth, size_t cap) {
  std::set<Subspace> E;
  const int d = inst.d;
  E.insert(Subspace::zero(d));
  E.insert(Subspace::full(d));
  if (!inst.explicit_E.empty()) {
    for (const auto& s : inst.explicit_E) E.insert(s);
    for (const auto& L : inst.maps) E.insert(kernel(L));
    SubspaceList out;
    out.entries.assign(E.begin(), E.end());
    return out;
  }
  for (const auto& L : inst.maps) E.insert(kernel(L));
  // Coordinate seeds: dimension-1 and codimension-1 coordinate subspaces.
  for (int i = 0; i < d; ++i) {
    std::vector<std::vector<Rat>> v(1, std::vector<Rat>(d));
    v[0][i] = 1;
    E.insert(Subspace::span(v, d));
    if (d >= 2) {
      std::vector<std::vector<Rat>> w;
      for (int k = 0; k < d; ++k) {
        if (k == i) continue;
        std::vector<Rat> e(d);
        e[k] = 1;
        w.push_back(std::move(e));
      }
      E.insert(Subspace::span(w, d));
    }
  }
  for (int round = 0; round < depth; ++round) {
    std::vector<Subspace> cur(E.begin(), E.end());
    bool grew = false;
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        if (E.insert(cur[i].sum(cur[j])).second) grew = true;
        if (E.insert(cur[i].intersect(cur[j])).second) grew = true;
        if (E.size() > cap)
          throw input_error("subspace closure exceeded cap " + std::to_string(cap) +
                            "; lower depth or supply the list explicitly");
      }
    if (!grew) break;
  }
  SubspaceList out;
  out.entries.assign(E.begin(), E.end());
  return out;
}

ConstraintSystem build_constraints(const HBLInstance& inst, const SubspaceList& E) {
  ConstraintSystem cs;
  cs.n = inst.n();
  cs.eq_rhs = inst.d;
  cs.eq_coeff.resize(cs.n);
  for (int j = 0; j < cs.n; ++j) cs.eq_coeff[j] = inst.dj(j);
  for (size_t v = 0; v < E.entries.size(); ++v) {
    const Subspace& V = E.entries[v];
    if (V.is_zero()) continue;  // 0 <= 0, vacuous
    ConstraintSystem::Ineq iq;
    iq.coeff.resize(cs.n);
    for (int j = 0; j < cs.n; ++j) iq.coeff[j] = image_dim(inst.maps[j], V);
    iq.rhs = V.dim();
    iq.subspace = static_cast<int>(v);
    cs.ineqs.push_back(std::move(iq));
  }
  return cs;
}

namespace {

bool feasible(const ConstraintSystem& cs, const std::vector<Rat>& s) {
  Rat lhs = 0;
  for (int j = 0; j < cs.n; ++j) {
    if (s[j] < 0) return false;
    lhs += cs.eq_coeff[j] * s[j];
  }
  if (lhs != cs.eq_rhs) return false;
  for (const auto& iq : cs.ineqs) {
    Rat v = 0;
    for (int j = 0; j < cs.n; ++j) v += iq.coeff[j] * s[j];
    if (v < iq.rhs) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<Rat>> enumerate_vertices(const ConstraintSystem& cs) {
  const int n = cs.n;
  // Candidate active rows: every inequality plus each bound s_j = 0. The mass
  // equality is always active.
  std::vector<std::pair<std::vector<Rat>, Rat>> rows;
  for (const auto& iq : cs.ineqs) rows.push_back({iq.coeff, iq.rhs});
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> e(n);
    e[j] = 1;
    rows.push_back({std::move(e), Rat(0)});
  }
  std::set<std::vector<Rat>> found;
  const int k = static_cast<int>(rows.size());
  std::vector<int> idx(n - 1);
  // Choose n-1 rows to pair with the equality; unique solutions that satisfy
  // everything are exactly the extreme points.
  std::function<void(int, int)> rec = [&](int pos, int next) {
    if (pos == n - 1) {
      RatMatrix M(n, n);
      std::vector<Rat> b(n);
      for (int j = 0; j < n; ++j) M.at(0, j) = cs.eq_coeff[j];
      b[0] = cs.eq_rhs;
      for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n; ++j) M.at(i + 1, j) = rows[idx[i]].first[j];
        b[i + 1] = rows[idx[i]].second;
      }
      std::vector<Rat> s = solve_square(M, b);
      if (!s.empty() && feasible(cs, s)) found.insert(s);
      return;
    }
    for (int r = next; r < k; ++r) {
      idx[pos] = r;
      rec(pos + 1, r + 1);
    }
  };
  if (n == 1) {
    // Equality alone pins the point.
    if (cs.eq_coeff[0] == 0) return {};
    std::vector<Rat> s{cs.eq_rhs / cs.eq_coeff[0]};
    if (feasible(cs, s)) found.insert(s);
  } else {
    rec(0, 0);
  }
  return std::vector<std::vector<Rat>>(found.begin(), found.end());
}

PrimalResult solve_primal(const ConstraintSystem& cs, const std::vector<long long>& m) {
  if (static_cast<int>(m.size()) != cs.n) throw input_error("solve_primal: m size mismatch");
  auto verts = enumerate_vertices(cs);
  if (verts.empty()) throw infeasible_error("empty polytope");
  PrimalResult best;
  bool have = false;
  for (const auto& v : verts) {
    Rat val = 0;
    for (int j = 0; j < cs.n; ++j) val += Rat(m[j]) * v[j];
    if (!have || val < best.value) {
      best.value = val;
      best.argmin = v;
      have = true;
    }
  }
  return best;
}

Rat DualVector::get(const Subspace& s) const {
  auto it = w.find(s);
  return it == w.end() ? Rat(0) : it->second;
}

void DualVector::add(const Subspace& s, const Rat& v) {
  if (v == 0) return;
  auto it = w.find(s);
  if (it == w.end()) {
    w.emplace(s, v);
  } else {
    it->second += v;
    if (it->second == 0) w.erase(it);
  }
}

Rat DualVector::dim_pairing() const {
  Rat t = 0;
  for (const auto& [s, v] : w) t += v * s.dim();
  return t;
}

Rat DualVector::image_pairing(const RatMatrix& L) const {
  Rat t = 0;
  for (const auto& [s, v] : w) t += v * image_dim(L, s);
  return t;
}

DualResult solve_dual(const HBLInstance& inst, const SubspaceList& E,
                      const std::vector<long long>& m) {
  const int n = inst.n();
  if (static_cast<int>(m.size()) != n) throw input_error("solve_dual: m size mismatch");
  const int ne = static_cast<int>(E.entries.size());
  LP lp;
  lp.nvars = ne;
  lp.maximize = true;
  lp.c.resize(ne);
  lp.is_free.assign(ne, 0);
  for (int v = 0; v < ne; ++v) {
    lp.c[v] = E.entries[v].dim();
    if (E.entries[v].is_full()) lp.is_free[v] = 1;
  }
  for (int j = 0; j < n; ++j) {
    LP::Row row;
    row.a.resize(ne);
    for (int v = 0; v < ne; ++v) row.a[v] = image_dim(inst.maps[j], E.entries[v]);
    row.rel = LP::LE;
    row.b = m[j];
    lp.rows.push_back(std::move(row));
  }
  LPResult r = solve_lp(lp);
  if (r.status == LPStatus::Infeasible)
    throw infeasible_error("dual infeasible: inconsistent subspace list");
  if (r.status == LPStatus::Unbounded)
    throw infeasible_error("dual unbounded: primal polytope is empty");
  DualResult out;
  out.value = r.value;
  for (int v = 0; v < ne; ++v)
    if (r.x[v] != 0) out.y.w.emplace(E.entries[v], r.x[v]);
  return out;
}

DualityReport verify_duality(const HBLInstance& inst, const SubspaceList& E,
                             const std::vector<long long>& m) {
  DualityReport rep;
  ConstraintSystem cs = build_constraints(inst, E);
  rep.primal_cert = solve_primal(cs, m);
  rep.dual_cert = solve_dual(inst, E, m);
  rep.primal = rep.primal_cert.value;
  rep.dual = rep.dual_cert.value;
  if (rep.primal != rep.dual)
    throw internal_error("strong duality violated: primal " + rat_str(rep.primal) +
                         " != dual " + rat_str(rep.dual));
  return rep;
}

}  // namespace hbl
