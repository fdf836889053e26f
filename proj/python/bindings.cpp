#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "canonphase/error.hpp"
#include "canonphase/fock.hpp"
#include "canonphase/measurement.hpp"
#include "canonphase/multiport.hpp"
#include "canonphase/oracle.hpp"
#include "canonphase/permanent.hpp"
#include "canonphase/selftest.hpp"
#include "canonphase/states.hpp"

namespace py = pybind11;
namespace cp = canonphase;

namespace {

cp::SingleModeState state(const std::vector<cp::Complex>& c) { return cp::custom_state(c); }

cp::RetainedDistribution apparatus(const cp::ComplexMatrix& u, const std::vector<cp::Complex>& psi,
                                   const std::optional<std::vector<cp::Complex>>& ref) {
  const cp::UnitaryMatrix m(u);
  const cp::PhaseGrid grid(m.dim() - 1);
  const auto r = ref ? state(*ref) : cp::binomial_reference(grid.n());
  return cp::retained_distribution(m, cp::assemble_input(state(psi), r, grid));
}

py::dict to_dict(const cp::RetainedDistribution& d) {
  py::dict out;
  out["probabilities"] = d.probabilities;
  out["success_probability"] = d.success_probability;
  return out;
}

py::dict netlist_dict(const cp::InterferometerNetlist& net) {
  py::list elements;
  for (const auto& e : net.elements) {
    py::dict d;
    d["kind"] = e.kind == cp::ElementKind::BeamSplitter ? "BS" : "PS";
    if (e.kind == cp::ElementKind::BeamSplitter)
      d["modes"] = py::make_tuple(e.mode_a, e.mode_b);
    else
      d["modes"] = py::make_tuple(e.mode_a);
    d["transmittance"] = e.transmittance;
    d["phase"] = e.phase;
    d["detection_irrelevant"] = e.detection_irrelevant;
    elements.append(d);
  }
  py::dict out;
  out["dim"] = net.dim;
  out["elements"] = elements;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-shot canonical phase measurement simulator";

  static py::exception<cp::Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cp::Error& e) {
      PyErr_SetString(error.ptr(), (std::string(cp::to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("dft_matrix", [](int dim) { return cp::dft_matrix(dim).matrix(); }, py::arg("dim"));
  m.def("phase_pointer_network", [](int dim) { return cp::phase_pointer_network(dim).matrix(); },
        py::arg("dim"));
  m.def("haar_random_unitary", [](int dim, std::uint64_t seed) { return cp::haar_random_unitary(dim, seed).matrix(); },
        py::arg("dim"), py::arg("seed"));

  m.def("decompose", [](const cp::ComplexMatrix& u) { return cp::to_text(cp::decompose(u)); },
        py::arg("u"), "Netlist text of a triangular beam-splitter array realizing u.");
  m.def("netlist_elements", [](const std::string& text) { return netlist_dict(cp::parse_netlist(text)); },
        py::arg("text"));
  m.def("recompose", [](const std::string& text) { return cp::recompose(cp::parse_netlist(text)).matrix(); },
        py::arg("text"));

  m.def("permanent", &cp::permanent, py::arg("m"));
  m.def("transition_amplitude",
        [](const cp::ComplexMatrix& u, std::vector<int> in, std::vector<int> out) {
          return cp::transition_amplitude(cp::UnitaryMatrix(u), cp::FockPattern(std::move(in)),
                                          cp::FockPattern(std::move(out)));
        },
        py::arg("u"), py::arg("input"), py::arg("output"));

  m.def("binomial_reference", [](int n) { return cp::binomial_reference(n).coefficients(); }, py::arg("n"));
  m.def("theta_state", [](int n, int k) { return cp::theta_state(cp::PhaseGrid(n), k).coefficients(); },
        py::arg("n"), py::arg("m"));
  m.def("coherent_state", [](cp::Complex a, int cutoff) { return cp::coherent_state(a, cutoff).coefficients(); },
        py::arg("alpha"), py::arg("cutoff"));

  m.def("retained_distribution",
        [](const cp::ComplexMatrix& u, const std::vector<cp::Complex>& psi,
           const std::optional<std::vector<cp::Complex>>& ref) { return to_dict(apparatus(u, psi, ref)); },
        py::arg("u"), py::arg("psi"), py::arg("reference") = py::none(),
        "Pointer-conditioned phase distribution for signal psi and a reference\n"
        "(binomial when omitted) through the transfer matrix u.");
  m.def("projection_distribution",
        [](const std::vector<cp::Complex>& psi, int n) {
          return to_dict(cp::projection_distribution(state(psi), cp::PhaseGrid(n)));
        },
        py::arg("psi"), py::arg("n"));
  m.def("canonical_density", [](const std::vector<cp::Complex>& psi, double theta) {
          return cp::canonical_density(state(psi), theta);
        },
        py::arg("psi"), py::arg("theta"));
  m.def("closed_form_pointer_amplitude",
        [](const std::vector<cp::Complex>& psi, const std::vector<cp::Complex>& ref, int n, int k) {
          return cp::closed_form_pointer_amplitude(state(psi), state(ref), cp::PhaseGrid(n), k);
        },
        py::arg("psi"), py::arg("reference"), py::arg("n"), py::arg("m"));
  m.def("pointer_amplitudes",
        [](const cp::ComplexMatrix& u, const std::vector<cp::Complex>& psi, const std::vector<cp::Complex>& ref) {
          const cp::UnitaryMatrix mat(u);
          return cp::pointer_amplitudes(mat, cp::assemble_input(state(psi), state(ref), cp::PhaseGrid(mat.dim() - 1)));
        },
        py::arg("u"), py::arg("psi"), py::arg("reference"));
  m.def("identity_check", &cp::identity_check, py::arg("n"), py::arg("x"), py::arg("y"), py::arg("m"));
  m.def("convergence_report",
        [](const std::vector<cp::Complex>& psi, const std::vector<int>& ns) {
          std::vector<std::pair<int, double>> out;
          for (const auto& r : cp::convergence_report(state(psi), ns)) out.emplace_back(r.n, r.sup_distance);
          return out;
        },
        py::arg("psi"), py::arg("ns"));

  m.def("sample",
        [](const std::vector<double>& probabilities, std::uint64_t shots, std::uint64_t seed) {
          cp::RetainedDistribution d{cp::PhaseGrid(static_cast<int>(probabilities.size()) - 1), probabilities, 1.0};
          return cp::sample(d, shots, seed).counts;
        },
        py::arg("probabilities"), py::arg("shots"), py::arg("seed"));

  m.def("selftest", [] {
    py::list out;
    for (const auto& r : cp::run_selftest())
      out.append(py::make_tuple(r.name, r.passed, r.total, r.worst, r.tolerance));
    return out;
  });
}
