#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hbl/errors.hpp"
#include "hbl/extremize.hpp"
#include "hbl/grid.hpp"
#include "hbl/io.hpp"
#include "hbl/reports.hpp"

namespace py = pybind11;
using namespace hbl;

namespace {

BFunction bspec(const std::string& b_json) { return parse_bfunction_json(b_json); }

std::string auto_hash(const std::string& raw) { return hash_hex(fnv1a64(raw)); }

}  // namespace

PYBIND11_MODULE(_hbl, m) {
  m.doc() = "scaling polytopes, box certificates and extremizer studies";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<infeasible_error>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<certificate_error>(m, "CertificateError", PyExc_RuntimeError);
  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init<>())
      .def(py::init([](double dx, long long start, std::vector<double> values) {
             GridFunction f;
             f.dx = dx;
             f.start = start;
             f.v = std::move(values);
             return f;
           }),
           py::arg("dx"), py::arg("start"), py::arg("values"))
      .def_readwrite("dx", &GridFunction::dx)
      .def_readwrite("start", &GridFunction::start)
      .def_readwrite("values", &GridFunction::v)
      .def("mass", &GridFunction::mass)
      .def("refine2", &GridFunction::refine2);

  py::class_<Triple>(m, "Triple")
      .def(py::init<>())
      .def(py::init([](GridFunction f, GridFunction g, GridFunction h) {
             Triple t{std::move(f), std::move(g), std::move(h)};
             t.set_targets_from_masses();
             return t;
           }),
           py::arg("f"), py::arg("g"), py::arg("h"))
      .def_readwrite("f", &Triple::f)
      .def_readwrite("g", &Triple::g)
      .def_readwrite("h", &Triple::h);

  m.def("eval_b", [](const std::string& b_json, const std::vector<double>& y) {
    return eval_b(bspec(b_json), y);
  });
  m.def("delta3", [](const std::string& b_json, const std::vector<double>& r) {
    if (r.size() != 6) throw input_error("delta3: rectangle needs [a,b,c,d,e,f]");
    return delta3(bspec(b_json), Rectangle3{r[0], r[1], r[2], r[3], r[4], r[5]});
  });
  m.def("eval_functional", [](const std::string& b_json, const Triple& t) {
    return eval_functional(bspec(b_json), t);
  });
  m.def("rearrange", &rearrange);
  m.def("rearrangement_gap", [](const std::string& b_json, const Triple& t) {
    return rearrangement_gap(bspec(b_json), t);
  });
  m.def("dilate", &dilate, py::arg("f"), py::arg("lam"));

  m.def(
      "best_gaussian",
      [](const std::string& b_json, const std::array<double, 3>& masses,
         const std::vector<double>& sigmas, double L, int N) {
        GaussianSearch gs;
        gs.L = L;
        gs.N = N;
        gs.sigmas = sigmas;
        const GaussianBest best = best_gaussian(bspec(b_json), masses, gs);
        return py::make_tuple(best.value, best.sigma, best.t);
      },
      py::arg("b_json"), py::arg("masses"), py::arg("sigmas"), py::arg("L") = 16.0,
      py::arg("N") = 2048);

  m.def("polytope_report",
        [](const std::string& inst_json) {
          return report_polytope(parse_instance_json(inst_json).inst, auto_hash(inst_json));
        });
  m.def("certify_report", [](const std::string& inst_json) {
    return report_certify(parse_instance_json(inst_json).inst, auto_hash(inst_json));
  });
  m.def("certify_sweep_csv",
        [](const std::string& inst_json, const std::string& var, long long lo, long long hi) {
          const InstanceConfig cfg = parse_instance_json(inst_json);
          return sweep_certify_csv(cfg.inst, cfg.m_sweep, var, lo, hi);
        });
  m.def(
      "check_b_report",
      [](const std::string& inst_json, const std::string& b_json,
         const std::vector<std::string>& checks, uint64_t seed, long long samples) {
        SamplerSpec sp;
        sp.seed = seed;
        sp.n = samples;
        const CheckBOutcome out = report_check_b(parse_instance_json(inst_json).inst,
                                                 bspec(b_json), checks, sp,
                                                 auto_hash(inst_json + b_json));
        return py::make_tuple(out.json, out.all_pass);
      },
      py::arg("inst_json"), py::arg("b_json"),
      py::arg("checks") = std::vector<std::string>{"c2", "c3", "scaling", "delta3"},
      py::arg("seed") = 1, py::arg("samples") = 10000);
  m.def(
      "extremize_report",
      [](const std::string& b_json, const std::array<double, 3>& masses, double L, int N,
         double sigma_lo, double sigma_hi, int sigma_count, double window, int iters) {
        ExtremizeRun run;
        run.masses = masses;
        run.L = L;
        run.N = N;
        run.sigma_lo = sigma_lo;
        run.sigma_hi = sigma_hi;
        run.sigma_count = sigma_count;
        run.window_lo = -window;
        run.window_hi = window;
        run.max_sweeps = iters;
        const ExtremizeOutcome out = report_extremize(bspec(b_json), run, auto_hash(b_json));
        return py::make_tuple(out.json, out.final_t);
      },
      py::arg("b_json"), py::arg("masses") = std::array<double, 3>{1, 1, 1},
      py::arg("L") = 16.0, py::arg("N") = 512, py::arg("sigma_lo") = 0.5,
      py::arg("sigma_hi") = 2.0, py::arg("sigma_count") = 5, py::arg("window") = 4.0,
      py::arg("iters") = 10);
}
