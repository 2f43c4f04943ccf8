#include "hbl/reports.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "hbl/errors.hpp"
#include "hbl/flagbox.hpp"
#include "hbl/io.hpp"
#include "hbl/polytope.hpp"

namespace hbl {

using nlohmann::json;

namespace {

json rat_json(const Rat& r) { return rat_str(r); }

json vec_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat_json(r));
  return a;
}

json basis_json(const Subspace& s) {
  json rows = json::array();
  for (int i = 0; i < s.basis.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < s.basis.cols; ++j) row.push_back(rat_json(s.basis.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json volume_json(const VolumeExpr& v) {
  json terms = json::array();
  for (const auto& [c, q] : v.terms) terms.push_back({rat_json(c), rat_json(q)});
  return {{"terms", terms}, {"value", v.value()}};
}

json check_json(const CheckReport& r) {
  return {{"condition", r.condition}, {"samples", r.samples},   {"worst", r.worst},
          {"pass", r.pass},           {"witness", r.witness},   {"seed", r.seed}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string report_polytope(const HBLInstance& inst, const std::string& config_hash) {
  inst.validate();
  const SubspaceList E = generate_subspace_list(inst, inst.closure_depth);
  const ConstraintSystem cs = build_constraints(inst, E);
  const auto vertices = enumerate_vertices(cs);
  if (vertices.empty()) throw infeasible_error("polytope is empty");

  json j;
  j["config_hash"] = config_hash;
  j["d"] = inst.d;
  j["n"] = inst.n();
  json subs = json::array();
  for (const auto& s : E.entries) subs.push_back({{"dim", s.dim()}, {"basis", basis_json(s)}});
  j["subspaces"] = subs;
  j["equality"] = {{"coeff", vec_json(cs.eq_coeff)}, {"rhs", rat_json(cs.eq_rhs)}};
  json ineqs = json::array();
  for (const auto& iq : cs.ineqs)
    ineqs.push_back(
        {{"coeff", vec_json(iq.coeff)}, {"rhs", rat_json(iq.rhs)}, {"subspace", iq.subspace}});
  j["inequalities"] = ineqs;
  json verts = json::array();
  for (const auto& v : vertices) verts.push_back(vec_json(v));
  j["vertices"] = verts;

  if (!inst.m.empty()) {
    const DualityReport dr = verify_duality(inst, E, inst.m);
    j["primal"] = {{"value", rat_json(dr.primal)}, {"argmin", vec_json(dr.primal_cert.argmin)}};
    json support = json::array();
    for (const auto& [s, w] : dr.dual_cert.y.w)
      support.push_back({{"basis", basis_json(s)}, {"weight", rat_json(w)}});
    j["dual"] = {{"value", rat_json(dr.dual)}, {"support", support}};
  }
  return dump(j);
}

namespace {

json certificate_json(const BoxCertificate& cert, const HBLInstance& inst) {
  json j;
  j["m"] = inst.m;
  j["primal_value"] = rat_json(cert.primal_value);
  j["dual_value"] = rat_json(cert.dual_value);
  j["trace_length"] = cert.trace.size();
  json flag = json::array();
  for (size_t i = 0; i < cert.flag.chain.size(); ++i)
    flag.push_back({{"basis", basis_json(cert.flag.chain[i])},
                    {"weight", rat_json(cert.flag.weights[i])}});
  j["flag"] = flag;
  json edges = json::array();
  for (const auto& e : cert.box.edges)
    edges.push_back({{"vec", vec_json(e.vec)}, {"exponent", rat_json(e.exponent)}});
  j["box"] = {{"edges", edges}, {"group_size", cert.box.group_size}};
  j["volume"] = volume_json(cert.volume);
  j["log_volume_minus_primal"] = cert.log_volume_minus_primal;
  j["normalization"] = cert.normalization;
  json images = json::array();
  for (size_t k = 0; k < cert.images.size(); ++k)
    images.push_back({{"volume", volume_json(cert.images[k])}, {"margin", cert.margins[k]}});
  j["images"] = images;
  return j;
}

}  // namespace

std::string report_certify(const HBLInstance& inst, const std::string& config_hash) {
  const BoxCertificate cert = certify(inst);
  json j = certificate_json(cert, inst);
  j["config_hash"] = config_hash;
  return dump(j);
}

std::string sweep_certify_csv(const HBLInstance& inst, const std::vector<std::string>& m_exprs,
                              const std::string& var, long long lo, long long hi) {
  if (m_exprs.size() != static_cast<size_t>(inst.n()))
    throw input_error("sweep: m_sweep expressions missing from the instance config");
  if (lo > hi) throw input_error("sweep: empty range");
  std::ostringstream out;
  out << var;
  for (int jj = 0; jj < inst.n(); ++jj) out << ",m" << jj;
  out << ",primal,log_volume,log_volume_minus_primal,normalization";
  for (int jj = 0; jj < inst.n(); ++jj) out << ",margin" << jj;
  out << "\n";
  for (long long k = lo; k <= hi; ++k) {
    HBLInstance point = inst;
    point.m.clear();
    for (const auto& e : m_exprs) point.m.push_back(eval_affine(e, var, k));
    const BoxCertificate cert = certify(point);
    out << k;
    for (long long mj : point.m) out << "," << mj;
    out << "," << rat_str(cert.primal_value) << "," << std::log(cert.volume.value()) << ","
        << cert.log_volume_minus_primal << "," << cert.normalization;
    for (double mg : cert.margins) out << "," << mg;
    out << "\n";
  }
  return out.str();
}

CheckBOutcome report_check_b(const HBLInstance& inst, const BFunction& B,
                             const std::vector<std::string>& checks, const SamplerSpec& sp,
                             const std::string& config_hash) {
  inst.validate();
  if (B.arity() != inst.n())
    throw input_error("check-b: B arity does not match the instance map count");
  std::vector<CheckReport> reports;
  std::vector<std::vector<Rat>> vertices;
  auto need_vertices = [&]() {
    if (!vertices.empty()) return;
    const SubspaceList E = generate_subspace_list(inst, inst.closure_depth);
    vertices = enumerate_vertices(build_constraints(inst, E));
    if (vertices.empty()) throw infeasible_error("polytope is empty");
  };
  for (const auto& c : checks) {
    if (c == "c2") {
      need_vertices();
      reports.push_back(check_polytope_conditions(B, vertices, PolytopeCheckMode::Max, sp));
    } else if (c == "c3") {
      need_vertices();
      reports.push_back(check_polytope_conditions(B, vertices, PolytopeCheckMode::Min, sp));
    } else if (c == "scaling") {
      std::vector<int> dj;
      for (int jj = 0; jj < inst.n(); ++jj) dj.push_back(inst.dj(jj));
      reports.push_back(check_scaling(B, inst.d, dj, sp));
    } else if (c == "delta3") {
      reports.push_back(check_delta3_nonneg(B, sp));
    } else if (c == "rho") {
      if (B.kind != BFunction::Kind::Rho)
        throw input_error("check-b: \"rho\" check requires a rho-composed B");
      const auto [scale, super] = check_rho_conditions(B, sp);
      reports.push_back(scale);
      reports.push_back(super);
    } else {
      throw input_error("check-b: unknown check \"" + c + "\"");
    }
  }
  CheckBOutcome out;
  json j;
  j["config_hash"] = config_hash;
  j["seed"] = sp.seed;
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(check_json(r));
    out.all_pass = out.all_pass && r.pass;
  }
  j["checks"] = arr;
  j["all_pass"] = out.all_pass;
  out.json = dump(j);
  return out;
}

ExtremizeOutcome report_extremize(const BFunction& B, const ExtremizeRun& run,
                                  const std::string& config_hash) {
  GaussianSearch gs;
  gs.L = run.L;
  gs.N = run.N;
  gs.sigmas = geometric_sigmas(run.sigma_lo, run.sigma_hi, run.sigma_count);
  const GaussianBest base = best_gaussian(B, run.masses, gs);

  AscendOptions opts;
  opts.max_sweeps = run.max_sweeps;
  opts.tol = run.tol;
  opts.rearrange_each_sweep = run.rearrange_each_sweep;
  const AscendResult asc = ascend(B, base.t, opts);

  json j;
  j["config_hash"] = config_hash;
  j["seed"] = run.seed;
  j["grid"] = {{"L", run.L}, {"N", run.N}};
  j["masses"] = run.masses;
  j["sigma_grid"] = gs.sigmas;
  j["window"] = {run.window_lo, run.window_hi};
  j["baseline"] = {{"value", base.value}, {"sigma", base.sigma}};
  j["ascent"] = {{"values", asc.values},
                 {"sweeps", asc.sweeps},
                 {"final_value", asc.values.back()},
                 {"improvement", asc.values.back() - base.value}};

  std::vector<MonomialTerm> terms;
  const bool residual_applicable = monomial_terms(B, terms) && !terms.empty() &&
                                   terms.size() <= 2;
  if (residual_applicable) {
    bool admissible = true;
    for (const auto& m : terms)
      if (m.coeff != 0 &&
          !(m.a > 0 && m.a < 1 && m.b > 0 && m.b < 1 && m.c > 0 && m.c < 1 &&
            std::abs(m.a + m.b + m.c - 2.0) <= 1e-9))
        admissible = false;
    if (admissible) {
      const FlatnessTable table = flatness_table(B, gs.sigmas, run.L, run.N, run.window_lo,
                                                 run.window_hi, run.masses);
      const GridFunction r0 = el_residual(B, base.t, run.window_lo, run.window_hi);
      json flat;
      flat["min"] = table.min_flatness;
      flat["argmin"] = table.argmin;
      flat["at_baseline"] = residual_flatness(r0, run.window_lo, run.window_hi);
      if (run.include_flatness_entries) {
        json entries = json::array();
        for (const auto& e : table.entries)
          entries.push_back({e.sigma[0], e.sigma[1], e.sigma[2], e.flatness});
        flat["entries"] = entries;
      }
      j["flatness"] = flat;
    }
  }

  ExtremizeOutcome out;
  out.final_t = asc.t;
  out.baseline = base.value;
  out.final_value = asc.values.back();
  out.json = dump(j);
  return out;
}

}  // namespace hbl
