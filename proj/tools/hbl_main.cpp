#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hbl/errors.hpp"
#include "hbl/grid.hpp"
#include "hbl/io.hpp"
#include "hbl/reports.hpp"

namespace {

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    hbl::atomic_write_file(out_path, content);
}

// "k=0..12" -> (var, lo, hi)
void parse_sweep(const std::string& s, std::string& var, long long& lo, long long& hi) {
  const auto eq = s.find('=');
  const auto dots = s.find("..");
  if (eq == std::string::npos || dots == std::string::npos || dots < eq)
    throw hbl::input_error("--sweep expects var=lo..hi");
  var = s.substr(0, eq);
  try {
    lo = std::stoll(s.substr(eq + 1, dots - eq - 1));
    hi = std::stoll(s.substr(dots + 2));
  } catch (const std::exception&) {
    throw hbl::input_error("--sweep expects integer bounds");
  }
}

std::vector<double> parse_doubles(const std::string& s, char sep) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(sep, pos);
    const std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw hbl::input_error("bad numeric list entry \"" + tok + "\"");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// "L=16,N=2048"
void parse_grid(const std::string& s, double& L, int& N) {
  for (const auto& kv : {s.substr(0, s.find(',')),
                         s.find(',') == std::string::npos ? std::string() : s.substr(s.find(',') + 1)}) {
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw hbl::input_error("--grid expects L=...,N=...");
    const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    try {
      if (key == "L")
        L = std::stod(val);
      else if (key == "N")
        N = std::stoi(val);
      else
        throw hbl::input_error("--grid: unknown key \"" + key + "\"");
    } catch (const hbl::input_error&) {
      throw;
    } catch (const std::exception&) {
      throw hbl::input_error("--grid: bad value \"" + val + "\"");
    }
  }
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Scaling polytopes, parallelepiped certificates and extremizer studies for "
               "multilinear functionals"};
  app.require_subcommand(1);

  std::string inst_path, b_path, out_path;

  auto* polytope = app.add_subcommand("polytope", "vertices, constraints and LP values");
  polytope->add_option("-c,--config", inst_path, "instance config (JSON)")->required();
  polytope->add_option("-o,--output", out_path, "report path (stdout if omitted)");

  auto* certify = app.add_subcommand("certify", "parallelepiped certificate for the dual value");
  std::string sweep;
  certify->add_option("-c,--config", inst_path, "instance config (JSON)")->required();
  certify->add_option("--sweep", sweep, "sweep var=lo..hi using the config's m_sweep");
  certify->add_option("-o,--output", out_path, "report path (stdout if omitted)");

  auto* checkb = app.add_subcommand("check-b", "size-function condition checks");
  std::string checks_csv = "c2,c3,scaling,delta3";
  uint64_t seed = 1;
  long long samples = 10000;
  checkb->add_option("-c,--config", inst_path, "instance config (JSON)")->required();
  checkb->add_option("-b,--bspec", b_path, "size function spec (JSON)")->required();
  checkb->add_option("--checks", checks_csv, "comma list from c2,c3,scaling,delta3,rho");
  checkb->add_option("--seed", seed, "sampler seed");
  checkb->add_option("--samples", samples, "sampler draws per check");
  checkb->add_option("-o,--output", out_path, "report path (stdout if omitted)");

  auto* extremize = app.add_subcommand("extremize", "Gaussian baseline, ascent and EL residual");
  std::string masses_csv = "1,1,1", grid_spec = "L=16,N=2048", sigma_spec = "0.5:2:7";
  double window = 4.0;
  int iters = 50;
  bool do_rearrange = false;
  std::string fn_prefix;
  extremize->add_option("-b,--bspec", b_path, "size function spec (JSON)")->required();
  extremize->add_option("--masses", masses_csv, "target masses a,b,c");
  extremize->add_option("--grid", grid_spec, "lattice spec L=16,N=2048");
  extremize->add_option("--sigma-grid", sigma_spec, "lo:hi:count geometric width grid");
  extremize->add_option("--window", window, "flatness window half-width");
  extremize->add_option("--iters", iters, "ascent sweeps");
  extremize->add_flag("--rearrange", do_rearrange, "rearrange after each sweep");
  extremize->add_option("--seed", seed, "recorded run seed");
  extremize->add_option("--functions", fn_prefix, "write <prefix>_{f,g,h}.csv");
  extremize->add_option("-o,--output", out_path, "report path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (polytope->parsed()) {
    const std::string raw = hbl::read_file(inst_path);
    const hbl::InstanceConfig cfg = hbl::parse_instance_json(raw);
    emit(out_path, hbl::report_polytope(cfg.inst, hbl::hash_hex(hbl::fnv1a64(raw))));
    return 0;
  }

  if (certify->parsed()) {
    const std::string raw = hbl::read_file(inst_path);
    const hbl::InstanceConfig cfg = hbl::parse_instance_json(raw);
    if (sweep.empty()) {
      emit(out_path, hbl::report_certify(cfg.inst, hbl::hash_hex(hbl::fnv1a64(raw))));
    } else {
      std::string var;
      long long lo = 0, hi = 0;
      parse_sweep(sweep, var, lo, hi);
      emit(out_path, hbl::sweep_certify_csv(cfg.inst, cfg.m_sweep, var, lo, hi));
    }
    return 0;
  }

  if (checkb->parsed()) {
    const std::string raw_i = hbl::read_file(inst_path), raw_b = hbl::read_file(b_path);
    const hbl::InstanceConfig cfg = hbl::parse_instance_json(raw_i);
    const hbl::BFunction B = hbl::parse_bfunction_json(raw_b);
    std::vector<std::string> checks;
    size_t pos = 0;
    while (pos <= checks_csv.size()) {
      const auto next = checks_csv.find(',', pos);
      const std::string tok =
          checks_csv.substr(pos, next == std::string::npos ? next : next - pos);
      if (!tok.empty()) checks.push_back(tok);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    hbl::SamplerSpec sp;
    sp.seed = seed;
    sp.n = samples;
    const hbl::CheckBOutcome out = hbl::report_check_b(
        cfg.inst, B, checks, sp, hbl::hash_hex(hbl::fnv1a64(raw_i + raw_b)));
    emit(out_path, out.json);
    return out.all_pass ? 0 : 4;
  }

  // extremize
  const std::string raw_b = hbl::read_file(b_path);
  const hbl::BFunction B = hbl::parse_bfunction_json(raw_b);
  hbl::ExtremizeRun run;
  const std::vector<double> masses = parse_doubles(masses_csv, ',');
  if (masses.size() != 3) throw hbl::input_error("--masses expects three values");
  run.masses = {masses[0], masses[1], masses[2]};
  parse_grid(grid_spec, run.L, run.N);
  const std::vector<double> sg = parse_doubles(sigma_spec, ':');
  if (sg.size() != 3) throw hbl::input_error("--sigma-grid expects lo:hi:count");
  run.sigma_lo = sg[0];
  run.sigma_hi = sg[1];
  run.sigma_count = static_cast<int>(sg[2]);
  run.window_lo = -window;
  run.window_hi = window;
  run.max_sweeps = iters;
  run.rearrange_each_sweep = do_rearrange;
  run.seed = seed;
  const hbl::ExtremizeOutcome out =
      hbl::report_extremize(B, run, hbl::hash_hex(hbl::fnv1a64(raw_b)));
  emit(out_path, out.json);
  if (!fn_prefix.empty()) {
    hbl::write_grid_csv(fn_prefix + "_f.csv", out.final_t.f);
    hbl::write_grid_csv(fn_prefix + "_g.csv", out.final_t.g);
    hbl::write_grid_csv(fn_prefix + "_h.csv", out.final_t.h);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const hbl::input_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const hbl::infeasible_error& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 2;
  } catch (const hbl::certificate_error& e) {
    std::fprintf(stderr, "certificate failure: %s\n", e.what());
    return 3;
  } catch (const hbl::numeric_error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 70;
  }
}
