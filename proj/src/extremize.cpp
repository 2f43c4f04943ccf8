#include "hbl/extremize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hbl/errors.hpp"

namespace hbl {
namespace {

double checked_eval(const BFunction& B, const Triple& t) {
  const double v = eval_functional(B, t);
  if (!std::isfinite(v)) throw numeric_error("non-finite objective value");
  return v;
}

// d I / d log(f_u): multiplicative gradient with respect to the f cells.
// Zero cells contribute zero, so the update below cannot revive them.
std::vector<double> grad_log_f(const std::vector<MonomialTerm>& terms, const Triple& t) {
  std::vector<double> d(t.f.v.size(), 0.0);
  const double dxdx = t.f.dx * t.g.dx;
  for (const auto& m : terms) {
    const std::vector<double> F = power_cells(t.f.v, m.a), G = power_cells(t.g.v, m.b),
                              H = power_cells(t.h.v, m.c);
    const long long nh = static_cast<long long>(H.size());
    const long long off = t.f.start + t.g.start - t.h.start;
    for (size_t u = 0; u < F.size(); ++u) {
      if (F[u] == 0) continue;
      double s = 0;
      for (size_t v = 0; v < G.size(); ++v) {
        if (G[v] == 0) continue;
        const long long i0 = off + static_cast<long long>(u + v);
        double hc = 0;
        if (i0 >= 0 && i0 < nh) hc += H[static_cast<size_t>(i0)];
        if (i0 + 1 >= 0 && i0 + 1 < nh) hc += H[static_cast<size_t>(i0 + 1)];
        s += G[v] * hc;
      }
      d[u] += m.coeff * m.a * F[u] * 0.5 * dxdx * s;
    }
  }
  return d;
}

std::vector<double> grad_log_h(const std::vector<MonomialTerm>& terms, const Triple& t) {
  std::vector<double> d(t.h.v.size(), 0.0);
  const double dxdx = t.f.dx * t.g.dx;
  for (const auto& m : terms) {
    const std::vector<double> F = power_cells(t.f.v, m.a), G = power_cells(t.g.v, m.b),
                              H = power_cells(t.h.v, m.c);
    if (F.empty() || G.empty()) continue;
    const std::vector<double> C = convolve_cells(F, G);
    const long long nc = static_cast<long long>(C.size());
    // h local cell j is hit as the lower half of diagonal w = j - off and as
    // the upper half of w = j - off - 1.
    const long long off = t.f.start + t.g.start - t.h.start;
    for (size_t j = 0; j < H.size(); ++j) {
      if (H[j] == 0) continue;
      const long long w = static_cast<long long>(j) - off;
      double cc = 0;
      if (w >= 0 && w < nc) cc += C[static_cast<size_t>(w)];
      if (w - 1 >= 0 && w - 1 < nc) cc += C[static_cast<size_t>(w - 1)];
      d[j] += m.coeff * m.c * H[j] * 0.5 * dxdx * cc;
    }
  }
  return d;
}

std::vector<double> grad_log_g(const std::vector<MonomialTerm>& terms, const Triple& t) {
  // Same kernel as the f gradient with the roles of f and g swapped.
  std::vector<double> d(t.g.v.size(), 0.0);
  const double dxdx = t.f.dx * t.g.dx;
  for (const auto& m : terms) {
    const std::vector<double> F = power_cells(t.f.v, m.a), G = power_cells(t.g.v, m.b),
                              H = power_cells(t.h.v, m.c);
    const long long nh = static_cast<long long>(H.size());
    const long long off = t.f.start + t.g.start - t.h.start;
    for (size_t v = 0; v < G.size(); ++v) {
      if (G[v] == 0) continue;
      double s = 0;
      for (size_t u = 0; u < F.size(); ++u) {
        if (F[u] == 0) continue;
        const long long i0 = off + static_cast<long long>(u + v);
        double hc = 0;
        if (i0 >= 0 && i0 < nh) hc += H[static_cast<size_t>(i0)];
        if (i0 + 1 >= 0 && i0 + 1 < nh) hc += H[static_cast<size_t>(i0 + 1)];
        s += F[u] * hc;
      }
      d[v] += m.coeff * m.b * G[v] * 0.5 * dxdx * s;
    }
  }
  return d;
}

void renormalize(GridFunction& f, double target) {
  const double mass = f.mass();
  if (!(mass > 0)) throw numeric_error("mass collapsed to zero during ascent");
  const double scale = target / mass;
  for (double& x : f.v) x *= scale;
}

// One accepted-or-skipped update of a single function. Returns the new
// objective value (>= `current` up to roundoff slack).
double update_one(const BFunction& B, const std::vector<MonomialTerm>& terms, Triple& t,
                  GridFunction Triple::* which, double target_mass, double current,
                  const AscendOptions& opts) {
  std::vector<double> d;
  if (which == &Triple::f)
    d = grad_log_f(terms, t);
  else if (which == &Triple::g)
    d = grad_log_g(terms, t);
  else
    d = grad_log_h(terms, t);

  GridFunction& fn = t.*which;
  const double mass = fn.mass();
  if (!(mass > 0)) return current;
  double total = 0;
  for (double x : d) total += x;
  if (!(total > 0)) return current;  // no usable direction (objective zero here)
  const double rbar = total / mass;

  const GridFunction saved = fn;
  double eta = opts.eta;
  for (int k = 0; k <= opts.max_halvings; ++k, eta *= 0.5) {
    for (size_t i = 0; i < fn.v.size(); ++i) {
      if (saved.v[i] <= 0) continue;
      const double rho = d[i] / (saved.v[i] * fn.dx);
      double mult = 1.0 + eta * (rho / rbar - 1.0);
      mult = std::min(10.0, std::max(0.1, mult));
      fn.v[i] = saved.v[i] * mult;
    }
    renormalize(fn, target_mass);
    const double value = checked_eval(B, t);
    if (value >= current * (1.0 - 1e-14) - 1e-300) return std::max(value, current);
  }
  fn = saved;
  return current;
}

}  // namespace

std::vector<double> geometric_sigmas(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0) || !(hi > 0) || hi < lo)
    throw input_error("bad sigma grid parameters");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  if (count == 1) return {lo};
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(step * i));
  out.back() = hi;
  return out;
}

GaussianBest best_gaussian(const BFunction& B, const std::array<double, 3>& masses,
                           const GaussianSearch& gs) {
  if (gs.sigmas.empty()) throw input_error("best_gaussian: empty sigma grid");
  for (double m : masses)
    if (!(m > 0)) throw input_error("best_gaussian: masses must be positive");
  const size_t ns = gs.sigmas.size();
  std::vector<GridFunction> gf(ns), gg(ns), gh(ns);
  for (size_t s = 0; s < ns; ++s) {
    gf[s] = gaussian_grid(gs.sigmas[s], masses[0], gs.L, gs.N);
    gg[s] = gaussian_grid(gs.sigmas[s], masses[1], gs.L, gs.N);
    gh[s] = gaussian_grid(gs.sigmas[s], masses[2], gs.L, gs.N);
  }

  GaussianBest best;
  best.value = -std::numeric_limits<double>::infinity();
  auto consider = [&](double value, size_t i, size_t j, size_t k) {
    if (!std::isfinite(value)) throw numeric_error("non-finite objective value");
    if (value > best.value) {
      best.value = value;
      best.sigma = {gs.sigmas[i], gs.sigmas[j], gs.sigmas[k]};
      best.t = Triple{gf[i], gg[j], gh[k]};
    }
  };

  std::vector<MonomialTerm> terms;
  if (monomial_terms(B, terms)) {
    const double dx = gf[0].dx;
    const long long s0 = gf[0].start;  // common start; local h index = s0 + w
    // Per sigma and term: power arrays of h, pre-split into the half-cell sum.
    std::vector<std::vector<std::vector<double>>> hh(terms.size());
    for (size_t ti = 0; ti < terms.size(); ++ti) {
      hh[ti].resize(ns);
      for (size_t k = 0; k < ns; ++k) {
        const std::vector<double> H = power_cells(gh[k].v, terms[ti].c);
        std::vector<double>& out = hh[ti][k];
        out.assign(2 * gs.N - 1, 0.0);
        const long long nh = static_cast<long long>(H.size());
        for (size_t w = 0; w < out.size(); ++w) {
          const long long i0 = s0 + static_cast<long long>(w);
          if (i0 >= 0 && i0 < nh) out[w] += H[static_cast<size_t>(i0)];
          if (i0 + 1 >= 0 && i0 + 1 < nh) out[w] += H[static_cast<size_t>(i0 + 1)];
        }
      }
    }
    std::vector<std::vector<double>> fpow(ns), gpow(ns);
    for (size_t i = 0; i < ns; ++i) {
      for (size_t j = 0; j < ns; ++j) {
        std::vector<double> values(ns, 0.0);
        for (size_t ti = 0; ti < terms.size(); ++ti) {
          const std::vector<double> C = convolve_cells(power_cells(gf[i].v, terms[ti].a),
                                                       power_cells(gg[j].v, terms[ti].b));
          for (size_t k = 0; k < ns; ++k) {
            double acc = 0;
            const std::vector<double>& h2 = hh[ti][k];
            for (size_t w = 0; w < C.size(); ++w) acc += C[w] * h2[w];
            values[k] += terms[ti].coeff * 0.5 * acc * dx * dx;
          }
        }
        for (size_t k = 0; k < ns; ++k) consider(values[k], i, j, k);
      }
    }
  } else {
    for (size_t i = 0; i < ns; ++i)
      for (size_t j = 0; j < ns; ++j)
        for (size_t k = 0; k < ns; ++k) {
          Triple t{gf[i], gg[j], gh[k]};
          consider(eval_functional(B, t), i, j, k);
        }
  }
  best.t.set_targets_from_masses();
  return best;
}

AscendResult ascend(const BFunction& B, const Triple& start, const AscendOptions& opts) {
  std::vector<MonomialTerm> terms;
  if (!monomial_terms(B, terms))
    throw input_error("ascend: B must be a monomial or a sum of monomials");
  require_common_grid(start);

  AscendResult res;
  res.t = start;
  res.t.set_targets_from_masses();
  double value = checked_eval(B, res.t);
  res.values.push_back(value);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double before = value;
    value = update_one(B, terms, res.t, &Triple::f, res.t.alpha, value, opts);
    value = update_one(B, terms, res.t, &Triple::g, res.t.beta, value, opts);
    value = update_one(B, terms, res.t, &Triple::h, res.t.gamma, value, opts);
    if (opts.rearrange_each_sweep) {
      Triple cand = res.t;
      cand.f = rearrange(cand.f);
      cand.g = rearrange(cand.g);
      cand.h = rearrange(cand.h);
      const double cv = checked_eval(B, cand);
      if (cv >= value) {
        cand.alpha = res.t.alpha;
        cand.beta = res.t.beta;
        cand.gamma = res.t.gamma;
        res.t = cand;
        value = cv;
      }
    }
    res.values.push_back(value);
    res.sweeps = sweep + 1;
    if (value - before <= opts.tol * std::max(std::abs(before), 1.0)) break;
  }
  return res;
}

GridFunction el_residual(const BFunction& B, const Triple& t, double x_lo, double x_hi) {
  require_common_grid(t);
  std::vector<MonomialTerm> terms;
  if (!monomial_terms(B, terms) || terms.empty() || terms.size() > 2)
    throw input_error("el_residual: B must be one or two monomials");
  std::vector<MonomialTerm> active;
  for (const auto& m : terms) {
    if (m.coeff == 0) continue;
    if (!(m.a > 0 && m.a < 1 && m.b > 0 && m.b < 1 && m.c > 0 && m.c < 1))
      throw input_error("el_residual: exponents must lie in (0,1)");
    if (std::abs(m.a + m.b + m.c - 2.0) > 1e-9)
      throw input_error("el_residual: exponent triples must sum to 2");
    active.push_back(m);
  }
  if (active.empty()) throw input_error("el_residual: no active monomial");

  const double dx = t.f.dx;
  std::vector<long long> cells;  // global f cells with midpoint in the window
  for (long long k = t.f.start; k < t.f.end(); ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dx;
    if (mid >= x_lo && mid <= x_hi) cells.push_back(k);
  }
  if (cells.empty()) throw input_error("el_residual: empty window");

  GridFunction r;
  r.dx = dx;
  r.start = cells.front();
  r.v.assign(cells.size(), 0.0);
  for (const auto& m : active) {
    const std::vector<double> G = power_cells(t.g.v, m.b), H = power_cells(t.h.v, m.c);
    const long long nh = static_cast<long long>(H.size());
    for (size_t ci = 0; ci < cells.size(); ++ci) {
      const long long k = cells[ci];
      const double fk = t.f.value_at_cell(k);
      if (!(fk > 0)) throw input_error("el_residual: zero f-cell inside window");
      double s = 0;
      for (size_t v = 0; v < G.size(); ++v) {
        if (G[v] == 0) continue;
        const long long i0 = k + t.g.start + static_cast<long long>(v) - t.h.start;
        double hc = 0;
        if (i0 >= 0 && i0 < nh) hc += H[static_cast<size_t>(i0)];
        if (i0 + 1 >= 0 && i0 + 1 < nh) hc += H[static_cast<size_t>(i0 + 1)];
        s += G[v] * hc;
      }
      r.v[ci] += m.coeff * std::pow(fk, m.a - 1.0) * 0.5 * dx * s;
    }
  }
  return r;
}

double residual_flatness(const GridFunction& r, double x_lo, double x_hi) {
  std::vector<double> vals;
  for (long long k = r.start; k < r.end(); ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * r.dx;
    if (mid >= x_lo && mid <= x_hi) vals.push_back(r.v[static_cast<size_t>(k - r.start)]);
  }
  if (vals.empty()) throw input_error("residual_flatness: empty window");
  double mean = 0;
  for (double x : vals) mean += x;
  mean /= static_cast<double>(vals.size());
  double var = 0;
  for (double x : vals) var += (x - mean) * (x - mean);
  var /= static_cast<double>(vals.size());
  if (mean == 0.0) {
    for (double x : vals)
      if (x != 0.0) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  return var / (mean * mean);
}

FlatnessTable flatness_table(const BFunction& B, const std::vector<double>& sigmas, double L,
                             int N, double x_lo, double x_hi,
                             const std::array<double, 3>& masses) {
  if (sigmas.empty()) throw input_error("flatness_table: empty sigma grid");
  const size_t ns = sigmas.size();
  std::vector<GridFunction> gf(ns), gg(ns), gh(ns);
  for (size_t s = 0; s < ns; ++s) {
    gf[s] = gaussian_grid(sigmas[s], masses[0], L, N);
    gg[s] = gaussian_grid(sigmas[s], masses[1], L, N);
    gh[s] = gaussian_grid(sigmas[s], masses[2], L, N);
  }
  // Validation and the shape of the residual are delegated once.
  (void)el_residual(B, Triple{gf[0], gg[0], gh[0]}, x_lo, x_hi);
  std::vector<MonomialTerm> terms0;
  monomial_terms(B, terms0);
  std::vector<MonomialTerm> terms;
  for (const auto& m : terms0)
    if (m.coeff != 0) terms.push_back(m);

  const double dx = gf[0].dx;
  const long long s0 = gf[0].start;
  std::vector<long long> cells;
  for (long long k = s0; k < s0 + N; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dx;
    if (mid >= x_lo && mid <= x_hi) cells.push_back(k);
  }
  if (cells.empty()) throw input_error("flatness_table: empty window");
  const size_t nw = cells.size();

  // W[t][j][k][cell]: convolution part of term t for (sigma_g j, sigma_h k).
  std::vector<std::vector<std::vector<std::vector<double>>>> W(terms.size());
  for (size_t ti = 0; ti < terms.size(); ++ti) {
    W[ti].assign(ns, std::vector<std::vector<double>>(ns));
    for (size_t j = 0; j < ns; ++j) {
      const std::vector<double> G = power_cells(gg[j].v, terms[ti].b);
      for (size_t k = 0; k < ns; ++k) {
        const std::vector<double> H = power_cells(gh[k].v, terms[ti].c);
        const long long nh = static_cast<long long>(H.size());
        std::vector<double>& out = W[ti][j][k];
        out.assign(nw, 0.0);
        for (size_t ci = 0; ci < nw; ++ci) {
          double s = 0;
          const long long base = cells[ci];  // g.start == h.start, offsets cancel
          for (size_t v = 0; v < G.size(); ++v) {
            const long long i0 = base + static_cast<long long>(v);
            double hc = 0;
            if (i0 >= 0 && i0 < nh) hc += H[static_cast<size_t>(i0)];
            if (i0 + 1 >= 0 && i0 + 1 < nh) hc += H[static_cast<size_t>(i0 + 1)];
            s += G[v] * hc;
          }
          out[ci] = 0.5 * dx * s;
        }
      }
    }
  }

  FlatnessTable table;
  table.min_flatness = std::numeric_limits<double>::infinity();
  std::vector<double> r(nw);
  for (size_t i = 0; i < ns; ++i) {
    // f powers on the window only.
    std::vector<std::vector<double>> fp(terms.size(), std::vector<double>(nw));
    for (size_t ti = 0; ti < terms.size(); ++ti)
      for (size_t ci = 0; ci < nw; ++ci) {
        const double fk = gf[i].value_at_cell(cells[ci]);
        if (!(fk > 0)) throw input_error("flatness_table: zero f-cell inside window");
        fp[ti][ci] = std::pow(fk, terms[ti].a - 1.0);
      }
    for (size_t j = 0; j < ns; ++j)
      for (size_t k = 0; k < ns; ++k) {
        std::fill(r.begin(), r.end(), 0.0);
        for (size_t ti = 0; ti < terms.size(); ++ti) {
          const std::vector<double>& w = W[ti][j][k];
          const double coeff = terms[ti].coeff;
          for (size_t ci = 0; ci < nw; ++ci) r[ci] += coeff * fp[ti][ci] * w[ci];
        }
        double mean = 0;
        for (double x : r) mean += x;
        mean /= static_cast<double>(nw);
        double var = 0;
        for (double x : r) var += (x - mean) * (x - mean);
        var /= static_cast<double>(nw);
        double flat;
        if (mean == 0.0) {
          flat = 0.0;
          for (double x : r)
            if (x != 0.0) flat = std::numeric_limits<double>::infinity();
        } else {
          flat = var / (mean * mean);
        }
        FlatnessEntry e;
        e.sigma = {sigmas[i], sigmas[j], sigmas[k]};
        e.flatness = flat;
        table.entries.push_back(e);
        if (flat < table.min_flatness) {
          table.min_flatness = flat;
          table.argmin = e.sigma;
        }
      }
  }
  return table;
}

}  // namespace hbl
