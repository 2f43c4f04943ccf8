#include "hbl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hbl/errors.hpp"

namespace hbl {

double GridFunction::mass() const {
  double s = 0;
  for (double x : v) s += x;
  return dx * s;
}

double GridFunction::value_at_cell(long long global) const {
  const long long i = global - start;
  if (i < 0 || i >= static_cast<long long>(v.size())) return 0.0;
  return v[i];
}

GridFunction GridFunction::refine2() const {
  GridFunction r;
  r.dx = dx / 2;
  r.start = 2 * start;
  r.v.resize(v.size() * 2);
  for (size_t i = 0; i < v.size(); ++i) r.v[2 * i] = r.v[2 * i + 1] = v[i];
  return r;
}

void GridFunction::trim() {
  size_t lo = 0, hi = v.size();
  while (lo < hi && v[lo] == 0) ++lo;
  while (hi > lo && v[hi - 1] == 0) --hi;
  start += static_cast<long long>(lo);
  v = std::vector<double>(v.begin() + lo, v.begin() + hi);
}

void Triple::set_targets_from_masses() {
  alpha = f.mass();
  beta = g.mass();
  gamma = h.mass();
}

void Triple::check_masses(double rel_tol) const {
  auto chk = [&](double got, double want, const char* name) {
    const double scale = std::max(1.0, std::abs(want));
    if (std::abs(got - want) > rel_tol * scale)
      throw numeric_error(std::string("mass drift on ") + name);
  };
  chk(f.mass(), alpha, "f");
  chk(g.mass(), beta, "g");
  chk(h.mass(), gamma, "h");
}

void require_common_grid(const Triple& t) {
  if (t.f.dx != t.g.dx || t.f.dx != t.h.dx)
    throw input_error("eval_functional: functions on different lattices");
  for (const GridFunction* f : {&t.f, &t.g, &t.h})
    for (double x : f->v)
      if (x < 0) throw input_error("grid function has negative cells");
}

namespace {

// Monomial fast path: powers then a convolution-shaped double loop.
double eval_monomial_term(const MonomialTerm& mono, const Triple& t) {
  const std::vector<double> F = power_cells(t.f.v, mono.a), G = power_cells(t.g.v, mono.b),
                            H = power_cells(t.h.v, mono.c);
  if (F.empty() || G.empty() || H.empty()) return 0.0;
  // C(w) = sum_{u+v=w} F_u G_v, w in global coordinates offset by f.start+g.start.
  const std::vector<double> conv = convolve_cells(F, G);
  const long long nh = static_cast<long long>(H.size());
  double acc = 0;
  for (size_t w = 0; w < conv.size(); ++w) {
    if (conv[w] == 0) continue;
    // Global h cell for the lower half of the diagonal split.
    const long long i0 = t.f.start + t.g.start + static_cast<long long>(w) - t.h.start;
    double hc = 0;
    if (i0 >= 0 && i0 < nh) hc += H[static_cast<size_t>(i0)];
    if (i0 + 1 >= 0 && i0 + 1 < nh) hc += H[static_cast<size_t>(i0 + 1)];
    acc += conv[w] * hc;
  }
  return mono.coeff * 0.5 * acc * t.f.dx * t.g.dx;
}

}  // namespace

std::vector<double> power_cells(const std::vector<double>& in, double e) {
  std::vector<double> out(in.size());
  for (size_t i = 0; i < in.size(); ++i)
    out[i] = in[i] > 0 ? (e == 0 ? 1.0 : std::pow(in[i], e)) : 0.0;
  return out;
}

std::vector<double> convolve_cells(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (size_t u = 0; u < a.size(); ++u) {
    const double au = a[u];
    if (au == 0) continue;
    double* cw = c.data() + u;
    for (size_t v = 0; v < b.size(); ++v) cw[v] += au * b[v];
  }
  return c;
}

bool monomial_terms(const BFunction& B, std::vector<MonomialTerm>& out) {
  out.clear();
  auto flatten = [&out](const BFunction& m) {
    if (m.kind != BFunction::Kind::Monomial || m.s.size() != 3) return false;
    out.push_back({m.coeff, rat_double(m.s[0]), rat_double(m.s[1]), rat_double(m.s[2])});
    return true;
  };
  if (B.kind == BFunction::Kind::Monomial) return flatten(B);
  if (B.kind != BFunction::Kind::Sum) return false;
  for (const auto& term : B.terms)
    if (!flatten(term)) {
      out.clear();
      return false;
    }
  return true;
}

double eval_functional(const BFunction& B, const Triple& t) {
  if (B.arity() != 3) throw input_error("eval_functional: B must take three arguments");
  require_common_grid(t);
  std::vector<MonomialTerm> monos;
  if (monomial_terms(B, monos)) {
    double acc = 0;
    for (const auto& term : monos) acc += eval_monomial_term(term, t);
    return acc;
  }
  const long long w0 = t.f.start + t.g.start;
  double acc = 0;
  for (size_t u = 0; u < t.f.v.size(); ++u) {
    const double fu = t.f.v[u];
    if (fu == 0) continue;
    for (size_t v = 0; v < t.g.v.size(); ++v) {
      const double gv = t.g.v[v];
      if (gv == 0) continue;
      const long long w = w0 + static_cast<long long>(u) + static_cast<long long>(v);
      const double h0 = t.h.value_at_cell(w), h1 = t.h.value_at_cell(w + 1);
      double local = 0;
      if (h0 > 0) local += eval_b3(B, fu, gv, h0);
      if (h1 > 0) local += eval_b3(B, fu, gv, h1);
      acc += 0.5 * local;
    }
  }
  return acc * t.f.dx * t.g.dx;
}

GridFunction rearrange(const GridFunction& f) {
  std::vector<double> vals;
  for (double x : f.v)
    if (x > 0) vals.push_back(x);
  std::stable_sort(vals.begin(), vals.end(), std::greater<double>());
  GridFunction out;
  out.dx = f.dx;
  if (vals.empty()) {
    out.start = 0;
    return out;
  }
  const long long n = static_cast<long long>(vals.size());
  // Placement order 0, +1, -1, +2, -2, ... => cells span [-(n-1)/2 .. n/2].
  const long long lo = -((n - 1) / 2);
  const long long hi = n / 2;
  out.start = lo;
  out.v.assign(static_cast<size_t>(hi - lo + 1), 0.0);
  long long cell = 0;
  for (long long k = 0; k < n; ++k) {
    out.v[static_cast<size_t>(cell - lo)] = vals[static_cast<size_t>(k)];
    if (cell > 0)
      cell = -cell;
    else
      cell = -cell + 1;
  }
  return out;
}

GridFunction rearrange_exact_refined(const GridFunction& f) {
  // Sorted half-cell values; the k-th pair sits at refined cells -(k+1), k.
  std::vector<double> vals;
  for (double x : f.v)
    if (x > 0) vals.push_back(x);
  std::stable_sort(vals.begin(), vals.end(), std::greater<double>());
  GridFunction out;
  out.dx = f.dx / 2;
  const long long n = static_cast<long long>(vals.size());
  if (n == 0) {
    out.start = 0;
    return out;
  }
  out.start = -n;
  out.v.assign(static_cast<size_t>(2 * n), 0.0);
  for (long long k = 0; k < n; ++k) {
    out.v[static_cast<size_t>(n + k)] = vals[static_cast<size_t>(k)];      // cell k
    out.v[static_cast<size_t>(n - 1 - k)] = vals[static_cast<size_t>(k)];  // cell -(k+1)
  }
  return out;
}

double rearrangement_gap(const BFunction& B, const Triple& t) {
  require_common_grid(t);
  Triple star;
  star.f = rearrange_exact_refined(t.f);
  star.g = rearrange_exact_refined(t.g);
  star.h = rearrange_exact_refined(t.h);
  star.set_targets_from_masses();
  return eval_functional(B, star) - eval_functional(B, t);
}

Triple remark_counterexample(double a1, double a2, double b1, double b2, double c1, double c2) {
  if (a1 > a2 || b1 > b2 || c1 > c2)
    throw input_error("remark_counterexample: needs a1<=a2, b1<=b2, c1<=c2");
  auto two_level = [](double outer, double inner, long long lo, long long n, long long in_lo,
                      long long in_n) {
    GridFunction f;
    f.dx = 0.5;
    f.start = lo;
    f.v.assign(static_cast<size_t>(n), outer);
    for (long long i = 0; i < in_n; ++i) f.v[static_cast<size_t>(in_lo - lo + i)] = inner;
    return f;
  };
  Triple t;
  // f: a1 on [-5/2,5/2), a2 on [1/2,3/2); cells at dx = 1/2.
  t.f = two_level(a1, a2, -5, 10, 1, 2);
  t.g = two_level(b1, b2, -5, 10, 1, 2);
  t.h = two_level(c1, c2, -10, 20, -2, 4);
  t.set_targets_from_masses();
  return t;
}

LayerProfile dyadic_decompose(const GridFunction& f) {
  LayerProfile p;
  p.mass = f.mass();
  for (double x : f.v) {
    if (x <= 0) continue;
    const int j = std::ilogb(x);  // floor(log2 x) exactly for finite doubles
    auto& slot = p.layers[j];
    slot.first += f.dx;
    slot.second += f.dx * std::ldexp(1.0, j);
  }
  return p;
}

namespace {

std::pair<int, double> peak_layer(const LayerProfile& p) {
  int k = 0;
  double best = -1;
  for (const auto& [j, md] : p.layers)
    if (md.second > best) {
      best = md.second;
      k = j;
    }
  return {k, best};
}

double tail_mass(const LayerProfile& p, int k, int m) {
  double s = 0;
  for (const auto& [j, md] : p.layers)
    if (std::abs(j - k) >= m) s += md.second;
  return s;
}

GridFunction scale_values(const GridFunction& f, double factor) {
  GridFunction g = f;
  for (double& x : g.v) x *= factor;
  return g;
}

}  // namespace

ScaleReport scale_diagnostics(const Triple& t, double c0, const std::vector<int>& m_list) {
  if (!(t.f.mass() > 0) || !(t.g.mass() > 0) || !(t.h.mass() > 0))
    throw input_error("scale_diagnostics: zero-mass function");
  // Work at unit masses per the normalization convention.
  const GridFunction fn = scale_values(t.f, 1.0 / t.f.mass());
  const GridFunction gn = scale_values(t.g, 1.0 / t.g.mass());
  const GridFunction hn = scale_values(t.h, 1.0 / t.h.mass());
  const LayerProfile pf = dyadic_decompose(fn), pg = dyadic_decompose(gn),
                     ph = dyadic_decompose(hn);
  ScaleReport r;
  auto [kf, mf] = peak_layer(pf);
  auto [kg, mg] = peak_layer(pg);
  auto [kh, mh] = peak_layer(ph);
  r.k_f = kf;
  r.k_g = kg;
  r.k_h = kh;
  r.peak_f = mf;
  r.peak_g = mg;
  r.peak_h = mh;
  r.peak_ok = mf >= c0 && mg >= c0 && mh >= c0;
  r.spread = std::abs(kf - kg) + std::abs(kf - kh);
  r.m_list = m_list;
  for (int m : m_list) {
    r.tail_f.push_back(tail_mass(pf, kf, m));
    r.tail_g.push_back(tail_mass(pg, kg, m));
    r.tail_h.push_back(tail_mass(ph, kh, m));
  }
  for (int e = 1; e <= 6; ++e) {
    const double rho = std::ldexp(1.0, e);
    r.rho_list.push_back(rho);
    double above = 0, below = 0;
    for (double x : fn.v) {
      if (x > rho) above += x;
      if (x > 0 && x < 1.0 / rho) below += x;
    }
    r.above_f.push_back(above * fn.dx);
    r.below_f.push_back(below * fn.dx);
  }
  return r;
}

GridFunction dilate(const GridFunction& f, double lambda) {
  if (!(lambda > 0)) throw input_error("dilate: lambda must be positive");
  const double l2 = std::log2(lambda);
  if (l2 == std::floor(l2)) {
    GridFunction g = f;
    g.dx = f.dx / lambda;
    for (double& x : g.v) x *= lambda;
    return g;
  }
  // Midpoint resample on the same lattice, then restore the mass.
  GridFunction g = f;
  const double m0 = f.mass();
  for (size_t i = 0; i < g.v.size(); ++i) {
    const double xm = (static_cast<double>(g.start) + static_cast<double>(i) + 0.5) * g.dx;
    const double sx = lambda * xm;
    const long long cell = static_cast<long long>(std::floor(sx / f.dx));
    g.v[i] = lambda * f.value_at_cell(cell);
  }
  const double m1 = g.mass();
  if (m1 > 0)
    for (double& x : g.v) x *= m0 / m1;
  return g;
}

Triple dilate_triple(const Triple& t, double lambda) {
  Triple out;
  out.f = dilate(t.f, lambda);
  out.g = dilate(t.g, lambda);
  out.h = dilate(t.h, lambda);
  out.alpha = t.alpha;
  out.beta = t.beta;
  out.gamma = t.gamma;
  return out;
}

GridFunction gaussian_grid(double sigma, double mass, double L, int N) {
  if (!(sigma > 0) || !(mass > 0) || !(L > 0) || N < 2)
    throw input_error("gaussian_grid: bad parameters");
  // Mass outside [-L, L] relative to the total: erfc(L / (sqrt(2) sigma)).
  const double lost = std::erfc(L / (std::sqrt(2.0) * sigma));
  if (lost > 1e-6)
    throw numeric_error("gaussian_grid: window truncates more than 1e-6 of the mass");
  GridFunction f;
  f.dx = 2.0 * L / N;
  f.start = -static_cast<long long>(N) / 2;
  f.v.resize(static_cast<size_t>(N));
  double s = 0;
  for (int i = 0; i < N; ++i) {
    const double x = (static_cast<double>(f.start) + i + 0.5) * f.dx;
    f.v[static_cast<size_t>(i)] = std::exp(-x * x / (2 * sigma * sigma));
    s += f.v[static_cast<size_t>(i)];
  }
  const double scale = mass / (s * f.dx);
  for (double& x : f.v) x *= scale;
  return f;
}

GridFunction random_step_function(std::mt19937_64& rng, double L, int N, int max_plateaus) {
  GridFunction f;
  f.dx = 2.0 * L / N;
  f.start = -static_cast<long long>(N) / 2;
  f.v.assign(static_cast<size_t>(N), 0.0);
  std::uniform_int_distribution<int> np(1, max_plateaus);
  std::uniform_int_distribution<int> pos(0, N - 1);
  std::uniform_real_distribution<double> level(0.05, 4.0);
  const int plateaus = np(rng);
  for (int p = 0; p < plateaus; ++p) {
    int a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    // Cap plateau width to keep supports localized.
    b = std::min(b, a + N / 8);
    const double val = level(rng);
    for (int i = a; i <= b; ++i) f.v[static_cast<size_t>(i)] = val;
  }
  if (f.mass() == 0) f.v[static_cast<size_t>(N / 2)] = 1.0;
  return f;
}

void write_grid_csv(const std::string& path, const GridFunction& f) {
  std::ofstream os(path);
  if (!os) throw input_error("cannot open " + path + " for writing");
  os.precision(17);
  os << "# dx=" << f.dx << " start=" << f.start << "\n";
  os << "x_left,value\n";
  for (size_t i = 0; i < f.v.size(); ++i)
    os << (static_cast<double>(f.start) + static_cast<double>(i)) * f.dx << "," << f.v[i] << "\n";
}

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw input_error("cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("# dx=", 0) != 0)
    throw input_error(path + ": missing grid header");
  GridFunction f;
  {
    std::istringstream hs(line.substr(2));
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("dx=", 0) == 0) f.dx = std::stod(tok.substr(3));
      if (tok.rfind("start=", 0) == 0) f.start = std::stoll(tok.substr(6));
    }
  }
  if (!(f.dx > 0)) throw input_error(path + ": bad dx");
  std::getline(is, line);  // column header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw input_error(path + ": malformed row");
    f.v.push_back(std::stod(line.substr(comma + 1)));
  }
  return f;
}

}  // namespace hbl
