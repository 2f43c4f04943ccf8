#include "hbl/flagbox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hbl {

DualVector basic_step(const DualVector& y, const Subspace& V, const Subspace& W) {
  if (V.contains(W) || W.contains(V)) throw input_error("basic_step: V and W are comparable");
  const Rat yv = y.get(V), yw = y.get(W);
  if (!(yw > 0) || yv < yw) throw input_error("basic_step: requires y_V >= y_W > 0");
  DualVector out = y;
  out.add(V.sum(W), yw);
  out.add(V.intersect(W), yw);
  out.add(W, -yw);
  out.add(V, -yw);
  return out;
}

namespace {

// Lexicographically first eligible pair in the working set; orientation puts
// the larger weight first (ties by subspace order).
bool find_pair(const DualVector& y, const std::vector<Subspace>& active, Subspace& V,
               Subspace& W) {
  for (size_t i = 0; i < active.size(); ++i) {
    const Rat yi = y.get(active[i]);
    if (!(yi > 0)) continue;
    for (size_t j = i + 1; j < active.size(); ++j) {
      const Rat yj = y.get(active[j]);
      if (!(yj > 0)) continue;
      if (active[i].contains(active[j]) || active[j].contains(active[i])) continue;
      if (yi >= yj) {
        V = active[i];
        W = active[j];
      } else {
        V = active[j];
        W = active[i];
      }
      return true;
    }
  }
  return false;
}

void insert_unique(std::vector<Subspace>& v, const Subspace& s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || *it != s) v.insert(it, s);
}

}  // namespace

ReduceResult reduce_to_flag(const DualVector& y, const std::vector<Subspace>& E_order) {
  for (const auto& [s, v] : y.w)
    if (!s.is_full() && v < 0) throw input_error("reduce_to_flag: negative weight off R^d");

  // Proper support in fold order: E_order first, unlisted entries after in
  // canonical order. R^d and 0 are comparable to everything and stay passive.
  std::vector<Subspace> queue;
  for (const auto& e : E_order)
    if (!e.is_full() && !e.is_zero() && y.get(e) > 0) queue.push_back(e);
  {
    std::vector<Subspace> rest;
    for (const auto& [s, v] : y.w) {
      if (s.is_full() || s.is_zero() || !(v > 0)) continue;
      if (std::find(queue.begin(), queue.end(), s) == queue.end()) rest.push_back(s);
    }
    std::sort(rest.begin(), rest.end());
    queue.insert(queue.end(), rest.begin(), rest.end());
  }

  ReduceResult res;
  res.y = y;
  std::vector<Subspace> active;  // kept sorted
  long long steps = 0;
  const long long step_cap = 200000;
  for (const auto& next : queue) {
    insert_unique(active, next);
    Subspace V, W;
    while (find_pair(res.y, active, V, W)) {
      if (++steps > step_cap) throw internal_error("reduce_to_flag: step cap exceeded");
      const Rat moved = res.y.get(W);
      res.y = basic_step(res.y, V, W);
      res.trace.push_back({V, W, moved});
      insert_unique(active, V.sum(W));
      insert_unique(active, V.intersect(W));
    }
  }

  // Assemble the flag: supported proper subspaces by dimension, then R^d.
  std::vector<Subspace> chain;
  for (const auto& [s, v] : res.y.w) {
    if (s.is_full() || s.is_zero()) continue;
    if (v > 0) chain.push_back(s);
  }
  std::sort(chain.begin(), chain.end(),
            [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i + 1].contains(chain[i]))
      throw internal_error("reduce_to_flag: support is not a chain");
  int ambient = 0;
  if (!y.w.empty()) ambient = y.w.begin()->first.ambient;
  for (const auto& e : E_order) ambient = e.ambient;
  if (ambient == 0) throw input_error("reduce_to_flag: cannot infer ambient dimension");
  res.flag.chain = chain;
  for (const auto& s : chain) res.flag.weights.push_back(res.y.get(s));
  res.flag.chain.push_back(Subspace::full(ambient));
  res.flag.weights.push_back(res.y.get(Subspace::full(ambient)));
  return res;
}

std::vector<Subspace> complement_decomposition(const Flag& flag) {
  if (flag.chain.empty()) throw input_error("complement_decomposition: empty flag");
  const int d = flag.chain.back().ambient;
  if (!flag.chain.back().is_full())
    throw input_error("complement_decomposition: flag must end at the full space");
  std::vector<Subspace> Y;
  RatMatrix acc(0, d);  // basis of W_{i-1} built so far
  for (const auto& W : flag.chain) {
    std::vector<std::vector<Rat>> picked;
    for (int r = 0; r < W.basis.rows; ++r) {
      RatMatrix cand = RatMatrix::vstack(acc, RatMatrix::from_rows({W.basis.row(r)}));
      if (cand.rank() == acc.rows + 1) {
        picked.push_back(W.basis.row(r));
        acc = cand;
      }
    }
    Y.push_back(Subspace::span(picked, d));
  }
  return Y;
}

std::vector<Rat> lift_weights(const Flag& flag) {
  std::vector<Rat> lifted(flag.weights.size());
  Rat suffix = 0;
  for (int i = static_cast<int>(flag.weights.size()) - 1; i >= 0; --i) {
    suffix += flag.weights[i];
    lifted[i] = suffix;
  }
  return lifted;
}

Parallelepiped build_box(const std::vector<Rat>& lifted,
                         const std::vector<Subspace>& decomposition) {
  if (lifted.size() != decomposition.size())
    throw input_error("build_box: weights/decomposition length mismatch");
  Parallelepiped S;
  for (size_t i = 0; i < decomposition.size(); ++i) {
    const auto& Y = decomposition[i];
    S.group_size.push_back(Y.dim());
    for (int r = 0; r < Y.basis.rows; ++r) S.edges.push_back({Y.basis.row(r), lifted[i]});
  }
  return S;
}

void VolumeExpr::add(const Rat& coeff, const Rat& exponent) {
  if (coeff == 0) return;
  for (auto& t : terms)
    if (t.second == exponent) {
      t.first += coeff;
      return;
    }
  terms.push_back({coeff, exponent});
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });
}

double VolumeExpr::value() const {
  double v = 0;
  for (const auto& [c, q] : terms) v += rat_double(c) * std::exp(rat_double(q));
  return v;
}

VolumeExpr box_volume(const Parallelepiped& S) {
  const size_t d = S.edges.size();
  if (d == 0) throw input_error("box_volume: no edges");
  const int amb = static_cast<int>(S.edges[0].vec.size());
  if (static_cast<size_t>(amb) != d) throw input_error("box_volume: edge count != dimension");
  RatMatrix M(amb, amb);
  Rat q = 0;
  for (size_t i = 0; i < d; ++i) {
    for (int j = 0; j < amb; ++j) M.at(static_cast<int>(i), j) = S.edges[i].vec[j];
    q += S.edges[i].exponent;
  }
  const Rat det = M.det();
  if (det == 0) throw input_error("box_volume: degenerate edges");
  VolumeExpr v;
  v.add(rat_abs(det), q);
  return v;
}

VolumeExpr image_volume(const RatMatrix& L, const Parallelepiped& S) {
  const int dprime = L.rows;
  const int d = static_cast<int>(S.edges.size());
  if (dprime > d) throw input_error("image_volume: map range exceeds box dimension");
  // Zonotope volume: sum over d'-subsets T of |det(L e_T)| e^{sum of q_T}.
  std::vector<int> pick(dprime);
  VolumeExpr v;
  std::function<void(int, int)> rec = [&](int pos, int next) {
    if (pos == dprime) {
      RatMatrix M(dprime, dprime);
      Rat q = 0;
      for (int i = 0; i < dprime; ++i) {
        const auto& e = S.edges[pick[i]];
        q += e.exponent;
        for (int r = 0; r < dprime; ++r) {
          Rat acc = 0;
          for (int c = 0; c < L.cols; ++c) acc += L.at(r, c) * e.vec[c];
          M.at(r, i) = acc;  // column i = L * edge
        }
      }
      v.add(rat_abs(M.det()), q);
      return;
    }
    for (int r = next; r < d; ++r) {
      pick[pos] = r;
      rec(pos + 1, r + 1);
    }
  };
  rec(0, 0);
  return v;
}

BoxCertificate certify(const HBLInstance& inst) {
  inst.validate();
  if (inst.m.empty()) throw input_error("certify: instance has no scale exponents m");
  SubspaceList E = generate_subspace_list(inst, inst.closure_depth);
  ConstraintSystem cs = build_constraints(inst, E);

  BoxCertificate cert;
  PrimalResult primal = solve_primal(cs, inst.m);
  DualResult dual = solve_dual(inst, E, inst.m);
  if (primal.value != dual.value)
    throw certificate_error("certify: primal/dual mismatch " + rat_str(primal.value) + " vs " +
                            rat_str(dual.value));
  cert.primal_value = primal.value;
  cert.dual_value = dual.value;

  ReduceResult red = reduce_to_flag(dual.y, E.entries);
  if (red.y.dim_pairing() != dual.value)
    throw certificate_error("certify: reduction changed the dual objective");
  cert.dual = red.y;
  cert.flag = red.flag;
  cert.trace = std::move(red.trace);
  cert.decomposition = complement_decomposition(cert.flag);
  std::vector<Rat> lifted = lift_weights(cert.flag);
  cert.box = build_box(lifted, cert.decomposition);
  cert.volume = box_volume(cert.box);

  // Exponent of |S| must be the dual objective: sum y'_{Y_i} dim Y_i =
  // sum y_{W_i} dim W_i.
  if (cert.volume.terms.size() != 1 || cert.volume.terms[0].second != dual.value)
    throw certificate_error("certify: box volume exponent != dual optimum");

  double sigma = 1.0;
  for (int j = 0; j < inst.n(); ++j) {
    cert.images.push_back(image_volume(inst.maps[j], cert.box));
    const double vol = cert.images.back().value();
    if (vol <= 0) throw certificate_error("certify: degenerate image volume");
    const double sj = std::exp((static_cast<double>(inst.m[j]) - std::log(vol)) / inst.dj(j));
    sigma = std::min(sigma, sj);
  }
  cert.normalization = sigma;
  for (int j = 0; j < inst.n(); ++j) {
    const double scaled = inst.dj(j) * std::log(sigma) + std::log(cert.images[j].value());
    const double margin = static_cast<double>(inst.m[j]) - scaled;
    cert.margins.push_back(margin);
  }
  for (double mg : cert.margins)
    if (mg < -1e-9) throw certificate_error("certify: image volume exceeds bound after scaling");
  cert.log_volume_minus_primal = std::log(cert.volume.value()) - rat_double(cert.primal_value);
  return cert;
}

}  // namespace hbl
