#include "hbl/bfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hbl/errors.hpp"

namespace hbl {

int BFunction::arity() const {
  switch (kind) {
    case Kind::Monomial:
      return static_cast<int>(s.size());
    case Kind::Sum:
    case Kind::Rho:
      return terms.empty() ? 0 : terms[0].arity();
    case Kind::IntegralFamily:
      return static_cast<int>(base.size());
  }
  return 0;
}

BFunction BFunction::monomial(std::vector<Rat> expts, double coefficient) {
  BFunction b;
  b.kind = Kind::Monomial;
  b.s = std::move(expts);
  b.coeff = coefficient;
  return b;
}

BFunction BFunction::sum(std::vector<BFunction> children) {
  if (children.empty()) throw input_error("sum: no terms");
  BFunction b;
  b.kind = Kind::Sum;
  b.terms = std::move(children);
  return b;
}

BFunction BFunction::rho_composed(RhoKind k, std::vector<BFunction> inner,
                                  std::vector<double> weights, double p) {
  if (inner.empty()) throw input_error("rho: no inner parts");
  for (const auto& c : inner)
    if (c.kind != Kind::Monomial) throw input_error("rho: inner parts must be monomials");
  BFunction b;
  b.kind = Kind::Rho;
  b.rho = k;
  b.terms = std::move(inner);
  b.rho_weights = std::move(weights);
  b.rho_p = p;
  if (k == RhoKind::WeightedSum && b.rho_weights.empty())
    b.rho_weights.assign(b.terms.size(), 1.0);
  return b;
}

BFunction BFunction::integral_family(const Rat& lo, const Rat& hi, std::vector<Rat> base_expts,
                                     std::vector<Rat> slope_expts, int nodes) {
  if (base_expts.size() != slope_expts.size())
    throw input_error("integral_family: base/slope size mismatch");
  if (nodes < 3 || nodes % 2 == 0) throw input_error("integral_family: Simpson needs odd nodes >= 3");
  if (!(lo < hi)) throw input_error("integral_family: empty range");
  BFunction b;
  b.kind = Kind::IntegralFamily;
  b.t_lo = lo;
  b.t_hi = hi;
  b.base = std::move(base_expts);
  b.slope = std::move(slope_expts);
  b.quad_nodes = nodes;
  return b;
}

double rho_eval(BFunction::RhoKind k, const std::vector<double>& weights, double p,
                const std::vector<double>& v) {
  switch (k) {
    case BFunction::RhoKind::WeightedSum: {
      double acc = 0;
      for (size_t i = 0; i < v.size(); ++i) acc += (i < weights.size() ? weights[i] : 1.0) * v[i];
      return acc;
    }
    case BFunction::RhoKind::Min:
      return *std::min_element(v.begin(), v.end());
    case BFunction::RhoKind::Max:
      return *std::max_element(v.begin(), v.end());
    case BFunction::RhoKind::PowerMean: {
      // ((sum w_i v_i^p)/(sum w_i))^{1/p}; p -> 0 not supported.
      if (p == 0) throw input_error("power mean: p must be nonzero");
      double num = 0, den = 0;
      for (size_t i = 0; i < v.size(); ++i) {
        const double w = i < weights.size() ? weights[i] : 1.0;
        if (v[i] == 0 && p < 0) return 0.0;
        num += w * std::pow(v[i], p);
        den += w;
      }
      return std::pow(num / den, 1.0 / p);
    }
  }
  return 0.0;
}

namespace {

double mono_eval(const BFunction& b, const double* y, int n) {
  double acc = b.coeff;
  for (int j = 0; j < n; ++j) {
    const double e = rat_double(b.s[j]);
    if (y[j] < 0) throw input_error("eval_b: negative argument");
    if (e == 0) continue;  // 0^0 = 1 convention at the boundary
    if (y[j] == 0) return 0.0;
    acc *= std::pow(y[j], e);
  }
  return acc;
}

double eval_impl(const BFunction& b, const double* y, int n) {
  switch (b.kind) {
    case BFunction::Kind::Monomial:
      return mono_eval(b, y, n);
    case BFunction::Kind::Sum: {
      double acc = 0;
      for (const auto& t : b.terms) acc += eval_impl(t, y, n);
      return acc;
    }
    case BFunction::Kind::Rho: {
      std::vector<double> inner(b.terms.size());
      for (size_t i = 0; i < b.terms.size(); ++i) inner[i] = eval_impl(b.terms[i], y, n);
      return rho_eval(b.rho, b.rho_weights, b.rho_p, inner);
    }
    case BFunction::Kind::IntegralFamily: {
      for (int j = 0; j < n; ++j) {
        if (y[j] < 0) throw input_error("eval_b: negative argument");
        if (y[j] == 0) return 0.0;
      }
      // integrand = prod y^{base} * exp(u t), u = sum slope_j log y_j;
      // Simpson weights with the exponentials as a geometric progression.
      double lead = 1.0, u = 0.0;
      for (int j = 0; j < n; ++j) {
        lead *= std::pow(y[j], rat_double(b.base[j]));
        u += rat_double(b.slope[j]) * std::log(y[j]);
      }
      const int k = b.quad_nodes;
      const double lo = rat_double(b.t_lo), hi = rat_double(b.t_hi);
      const double dt = (hi - lo) / (k - 1);
      const double r = std::exp(u * dt);
      double node = std::exp(u * lo);
      double acc = node;  // weight 1 at the left end
      for (int i = 1; i + 1 < k; ++i) {
        node *= r;
        acc += node * (i % 2 ? 4.0 : 2.0);
      }
      node *= r;
      acc += node;
      return lead * acc * dt / 3.0;
    }
  }
  return 0.0;
}

}  // namespace

double eval_b(const BFunction& b, const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != b.arity()) throw input_error("eval_b: arity mismatch");
  return eval_impl(b, y.data(), static_cast<int>(y.size()));
}

double eval_b3(const BFunction& b, double y1, double y2, double y3) {
  const double y[3] = {y1, y2, y3};
  return eval_impl(b, y, 3);
}

double delta3(const BFunction& F, const Rectangle3& R) {
  if (R.a > R.b || R.c > R.d || R.e > R.f) throw input_error("delta3: degenerate rectangle order");
  return eval_b3(F, R.b, R.d, R.f) - eval_b3(F, R.a, R.d, R.f) - eval_b3(F, R.b, R.c, R.f) -
         eval_b3(F, R.b, R.d, R.e) + eval_b3(F, R.b, R.c, R.e) + eval_b3(F, R.a, R.d, R.e) +
         eval_b3(F, R.a, R.c, R.f) - eval_b3(F, R.a, R.c, R.e);
}

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return std::exp(u(rng));
}

}  // namespace

CheckReport check_delta3_nonneg(const BFunction& F, const SamplerSpec& sp, double tol) {
  std::mt19937_64 rng(sp.seed);
  CheckReport rep;
  rep.condition = "delta3-nonnegative";
  rep.seed = sp.seed;
  rep.samples = sp.n;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> worst_rect;
  for (long long i = 0; i < sp.n; ++i) {
    double xs[2] = {log_uniform(rng, sp.log_lo, sp.log_hi), log_uniform(rng, sp.log_lo, sp.log_hi)};
    double ys[2] = {log_uniform(rng, sp.log_lo, sp.log_hi), log_uniform(rng, sp.log_lo, sp.log_hi)};
    double zs[2] = {log_uniform(rng, sp.log_lo, sp.log_hi), log_uniform(rng, sp.log_lo, sp.log_hi)};
    Rectangle3 R{std::min(xs[0], xs[1]), std::max(xs[0], xs[1]), std::min(ys[0], ys[1]),
                 std::max(ys[0], ys[1]), std::min(zs[0], zs[1]), std::max(zs[0], zs[1])};
    const double v = delta3(F, R);
    if (v < worst) {
      worst = v;
      worst_rect = {R.a, R.b, R.c, R.d, R.e, R.f};
    }
  }
  rep.worst = worst;
  rep.pass = worst >= -tol;
  if (!rep.pass) rep.witness = worst_rect;
  return rep;
}

namespace {

double vertex_extremum(const std::vector<std::vector<Rat>>& vertices,
                       const std::vector<double>& lam, bool want_max) {
  double best = 0;
  bool have = false;
  for (const auto& v : vertices) {
    double t = 1;
    for (size_t j = 0; j < v.size(); ++j) t *= std::pow(lam[j], rat_double(v[j]));
    if (!have || (want_max ? t > best : t < best)) {
      best = t;
      have = true;
    }
  }
  if (!have) throw input_error("polytope check: empty vertex list");
  return best;
}

}  // namespace

CheckReport check_polytope_conditions(const BFunction& B,
                                      const std::vector<std::vector<Rat>>& vertices,
                                      PolytopeCheckMode mode, const SamplerSpec& sp,
                                      double threshold) {
  const int n = B.arity();
  std::mt19937_64 rng(sp.seed);
  CheckReport rep;
  rep.condition = mode == PolytopeCheckMode::Max ? "polytope-upper" : "polytope-lower";
  rep.seed = sp.seed;
  const bool is_max = mode == PolytopeCheckMode::Max;
  double worst = is_max ? 0.0 : std::numeric_limits<double>::infinity();
  std::vector<double> witness;
  auto consider = [&](const std::vector<double>& lam, const std::vector<double>& y) {
    const double denom_b = eval_b(B, y);
    if (denom_b <= 0) return;
    std::vector<double> ly(n);
    for (int j = 0; j < n; ++j) ly[j] = lam[j] * y[j];
    const double num = eval_b(B, ly);
    const double ext = vertex_extremum(vertices, lam, is_max);
    const double ratio = num / (ext * denom_b);
    const bool update = is_max ? ratio > worst : ratio < worst;
    if (update) {
      worst = ratio;
      witness = lam;
      witness.insert(witness.end(), y.begin(), y.end());
    }
  };
  const std::vector<double> ones(n, 1.0);
  std::vector<double> ray(n);
  consider(ones, ones);
  for (double t : {std::exp(10.0), std::exp(-10.0)}) {
    std::fill(ray.begin(), ray.end(), t);
    consider(ray, ones);
  }
  for (long long i = 0; i < sp.n; ++i) {
    std::vector<double> lam(n), y(n);
    for (int j = 0; j < n; ++j) {
      lam[j] = log_uniform(rng, sp.log_lo, sp.log_hi);
      y[j] = log_uniform(rng, sp.log_lo, sp.log_hi);
    }
    consider(lam, y);
  }
  rep.samples = sp.n + 3;
  rep.worst = worst;
  rep.pass = is_max ? worst <= threshold : worst >= 1.0 / threshold;
  if (!rep.pass && !witness.empty()) rep.witness = witness;
  return rep;
}

CheckReport check_scaling(const BFunction& B, int d, const std::vector<int>& dj,
                          const SamplerSpec& sp, double threshold) {
  const int n = B.arity();
  if (static_cast<int>(dj.size()) != n) throw input_error("check_scaling: dj size mismatch");
  std::mt19937_64 rng(sp.seed);
  CheckReport rep;
  rep.condition = "scaling-law";
  rep.seed = sp.seed;
  rep.samples = sp.n;
  double sup = 0, inf = std::numeric_limits<double>::infinity();
  std::vector<double> wit_hi, wit_lo;
  for (long long i = 0; i < sp.n; ++i) {
    const double R = log_uniform(rng, sp.log_lo, sp.log_hi);
    std::vector<double> y(n), ry(n);
    for (int j = 0; j < n; ++j) {
      y[j] = log_uniform(rng, sp.log_lo, sp.log_hi);
      ry[j] = std::pow(R, dj[j]) * y[j];
    }
    const double denom = std::pow(R, d) * eval_b(B, y);
    if (denom <= 0) continue;
    const double ratio = eval_b(B, ry) / denom;
    if (ratio > sup) {
      sup = ratio;
      wit_hi = y;
      wit_hi.insert(wit_hi.begin(), R);
    }
    if (ratio < inf) {
      inf = ratio;
      wit_lo = y;
      wit_lo.insert(wit_lo.begin(), R);
    }
  }
  rep.worst = std::max(sup, inf > 0 ? 1.0 / inf : std::numeric_limits<double>::infinity());
  rep.pass = rep.worst <= threshold;
  if (!rep.pass) rep.witness = (sup >= 1.0 / inf) ? wit_hi : wit_lo;
  return rep;
}

std::pair<CheckReport, CheckReport> check_rho_conditions(const BFunction& rho_node,
                                                         const SamplerSpec& sp, double tol) {
  if (rho_node.kind != BFunction::Kind::Rho)
    throw input_error("check_rho_conditions: not a rho-composed function");
  const int k = static_cast<int>(rho_node.terms.size());
  auto rho = [&](const std::vector<double>& v) {
    return rho_eval(rho_node.rho, rho_node.rho_weights, rho_node.rho_p, v);
  };
  std::mt19937_64 rng(sp.seed);

  CheckReport scale;
  scale.condition = "rho-scale";
  scale.seed = sp.seed;
  scale.samples = sp.n;
  double worst_c = 0;
  std::vector<double> wit_c;
  for (long long i = 0; i < sp.n; ++i) {
    std::vector<double> lam(k), y(k), ly(k);
    double lmax = 0;
    for (int j = 0; j < k; ++j) {
      lam[j] = log_uniform(rng, sp.log_lo, sp.log_hi);
      y[j] = log_uniform(rng, sp.log_lo, sp.log_hi);
      ly[j] = lam[j] * y[j];
      lmax = std::max(lmax, lam[j]);
    }
    const double denom = lmax * rho(y);
    if (denom <= 0) continue;
    const double c = rho(ly) / denom;
    if (c > worst_c) {
      worst_c = c;
      wit_c = lam;
      wit_c.insert(wit_c.end(), y.begin(), y.end());
    }
  }
  scale.worst = worst_c;
  scale.pass = worst_c <= 1.0 + tol;
  if (!scale.pass) scale.witness = wit_c;

  CheckReport super;
  super.condition = "rho-superadditive";
  super.seed = sp.seed;
  super.samples = sp.n + 1;
  double worst_defect = -std::numeric_limits<double>::infinity();
  std::vector<double> wit_s;
  auto consider = [&](const std::vector<double>& y1, const std::vector<double>& y2) {
    std::vector<double> ysum(k);
    for (int j = 0; j < k; ++j) ysum[j] = y1[j] + y2[j];
    const double defect = rho(y1) + rho(y2) - rho(ysum);
    if (defect > worst_defect) {
      worst_defect = defect;
      wit_s = y1;
      wit_s.insert(wit_s.end(), y2.begin(), y2.end());
    }
  };
  {
    std::vector<double> e1(k, 0.0), e2(k, 0.0);
    e1[0] = 1.0;
    e2[k > 1 ? 1 : 0] = 1.0;
    consider(e1, e2);
  }
  for (long long i = 0; i < sp.n; ++i) {
    std::vector<double> y1(k), y2(k);
    for (int j = 0; j < k; ++j) {
      y1[j] = log_uniform(rng, sp.log_lo, sp.log_hi);
      y2[j] = log_uniform(rng, sp.log_lo, sp.log_hi);
    }
    consider(y1, y2);
  }
  super.worst = worst_defect;
  super.pass = worst_defect <= tol;
  if (!super.pass) super.witness = wit_s;
  return {scale, super};
}

}  // namespace hbl
