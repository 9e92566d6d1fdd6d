#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fockbar/calculus.hpp"
#include "fockbar/expansion.hpp"
#include "fockbar/runner.hpp"

namespace py = pybind11;
using namespace fockbar;

namespace {

PolyKernel kernel_from_json(const std::string& s) {
  return PolyKernel::from_json(nlohmann::json::parse(s));
}

std::string kernel_to_json(const PolyKernel& k) { return k.to_json().dump(); }

std::string compose_json(const std::string& kind, const std::string& a1,
                         const std::string& a2, int n, int m) {
  const PolyKernel k1 = kernel_from_json(a1);
  const PolyKernel k2 = kernel_from_json(a2);
  PolyKernel out;
  if (kind == "core")
    out = compose_core(k1, k2, n);
  else if (kind == "perp")
    out = compose_K(k1, k2, n, m);
  else if (kind == "prime")
    out = compose_Kprime(k1, k2, n, m);
  else if (kind == "double_prime")
    out = compose_Kdoubleprime(k1, k2, n, m);
  else if (kind == "extension")
    out = compose_E(k1, k2, n, m);
  else
    throw ShapeError("compose: unknown kind '" + kind + "'");
  return kernel_to_json(out);
}

cplx eval_json(const std::string& k, const std::vector<cplx>& Z,
               const std::vector<cplx>& Zp) {
  return kernel_from_json(k).eval(Z, Zp)(0, 0);
}

std::string expand_series(const std::string& jet_json, int order) {
  GeometryJet jet = GeometryJet::from_json(nlohmann::json::parse(jet_json));
  KernelSeries C = build_C_series(jet, order);
  KernelSeries P = perp_series(C, order);
  KernelSeries I = iop_series(P, jet, order);
  KernelSeries E = extension_series(I, jet, order);
  nlohmann::json out{{"C", C.to_json()},
                     {"perp", P.to_json()},
                     {"iop", I.to_json()},
                     {"extension", E.to_json()}};
  return out.dump();
}

py::dict run_mode(const std::string& mode, const std::string& config_json,
                  const std::string& out_dir) {
  ExperimentConfig cfg =
      ExperimentConfig::from_json(nlohmann::json::parse(config_json));
  RunReport rep;
  if (mode == "verify-calculus")
    rep = run_verify(cfg, out_dir);
  else if (mode == "expand")
    rep = run_expand(cfg, out_dir);
  else if (mode == "simulate")
    rep = run_simulate(cfg, out_dir);
  else if (mode == "decay")
    rep = run_decay(cfg, out_dir);
  else
    throw ShapeError("run: unknown mode '" + mode + "'");
  py::dict out;
  out["passed"] = rep.all_passed();
  out["summary"] = rep.summary.dump();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "asymptotic kernel calculus: compositions, expansions, and the "
              "finite-dimensional lab";
  mod.def("compose", &compose_json, py::arg("kind"), py::arg("a1"),
          py::arg("a2"), py::arg("n"), py::arg("m"),
          "Compose two JSON-serialized polynomial kernels against the model "
          "Gaussian family named by `kind`.");
  mod.def("kernel_eval", &eval_json, py::arg("kernel"), py::arg("left"),
          py::arg("right"), "Evaluate a JSON-serialized kernel at a point pair.");
  mod.def("expand", &expand_series, py::arg("jet"), py::arg("order"),
          "Run the expansion engine on a JSON-serialized geometry jet; "
          "returns the four series as a JSON object.");
  mod.def("run", &run_mode, py::arg("mode"), py::arg("config"),
          py::arg("out_dir"),
          "Run one experiment mode from a JSON config string.");
  mod.attr("schema_version") = kSchemaVersion;
}
