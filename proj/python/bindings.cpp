#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "razak/blocks.hpp"
#include "razak/cli.hpp"
#include "razak/errors.hpp"
#include "razak/homs.hpp"
#include "razak/tower.hpp"
#include "razak/traces.hpp"

namespace py = pybind11;
using namespace razak;

namespace {

PyObject* error_type = nullptr;

py::tuple branch_tuple(const BranchMap& b) { return py::make_tuple(b.l, b.d, b.constant); }

py::dict gap_dict(const OscillationGap& g) {
  py::dict d;
  d["gap"] = g.gap;
  d["modulus"] = g.modulus;
  d["min_value"] = g.min_value;
  d["max_value"] = g.max_value;
  return d;
}

}  // namespace

PYBIND11_MODULE(_razak, m) {
  m.doc() = "Building blocks, connecting maps and towers";

  error_type = PyErr_NewException("razak.RazakError", PyExc_RuntimeError, nullptr);
  m.attr("RazakError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  py::class_<BuildingBlock>(m, "BuildingBlock")
      .def_readonly("n", &BuildingBlock::n)
      .def_readonly("a", &BuildingBlock::a)
      .def_property_readonly("n_prime", &BuildingBlock::n_prime)
      .def("__eq__", [](const BuildingBlock& x, const BuildingBlock& y) { return x == y; })
      .def("__repr__", [](const BuildingBlock& b) { return to_string(b); });
  m.def("make_block", &make_block, py::arg("n"), py::arg("a"));

  py::class_<BlockElement>(m, "BlockElement")
      .def_property_readonly("block", &BlockElement::block)
      .def_property_readonly("grid_size", &BlockElement::grid_size)
      .def_property_readonly("boundary", &BlockElement::boundary)
      .def("at", &BlockElement::at, py::arg("t"))
      .def("sample", &BlockElement::sample, py::arg("j"));

  m.def("canonical_h", &canonical_h, py::arg("block"), py::arg("grid_size"));
  m.def("zero_element", &zero_element, py::arg("block"), py::arg("grid_size"));
  m.def(
      "psi_embed",
      [](const BuildingBlock& b, std::size_t n, const std::function<double(double)>& g) { return psi_embed(b, n, g); },
      py::arg("block"), py::arg("grid_size"), py::arg("g"));
  m.def(
      "random_element",
      [](const BuildingBlock& b, std::size_t n, std::uint64_t seed, bool self_adjoint) {
        std::mt19937_64 rng(seed);
        return random_element(b, n, rng, self_adjoint);
      },
      py::arg("block"), py::arg("grid_size"), py::arg("seed"), py::arg("self_adjoint") = false);
  m.def("validate_element", &validate_element, py::arg("element"));
  m.def(
      "herm_spectrum", [](const CMatrix& x) { return herm_spectrum(x); }, py::arg("matrix"));
  m.def(
      "certify_no_projection",
      [](const BlockElement& e, double eps) {
        const ProjectionVerdict v = certify_no_projection(e, eps);
        py::dict d;
        d["kind"] = to_string(v.kind);
        d["reason"] = to_string(v.reason);
        d["bound"] = v.bound;
        d["defect"] = v.defect;
        d["rank_at_zero"] = v.rank_at_zero;
        d["rank_at_one"] = v.rank_at_one;
        d["rank_at_infinity"] = v.rank_at_infinity;
        return d;
      },
      py::arg("element"), py::arg("eps"));

  py::class_<ConnectingMap>(m, "ConnectingMap")
      .def_readonly("source", &ConnectingMap::source)
      .def_readonly("target", &ConnectingMap::target)
      .def_readonly("depth", &ConnectingMap::depth)
      .def_property_readonly("multiplicity", &ConnectingMap::multiplicity)
      .def_property_readonly("branches",
                             [](const ConnectingMap& phi) {
                               py::list out;
                               for (const auto& b : phi.branches) out.append(branch_tuple(b));
                               return out;
                             })
      .def("unitary_at", &ConnectingMap::unitary_at, py::arg("x"));
  m.def(
      "build_successor",
      [](const BuildingBlock& b, std::size_t n) {
        Successor s = build_successor(b, n);
        return py::make_tuple(s.block, s.map);
      },
      py::arg("block"), py::arg("grid_size"));
  m.def("apply_map", &apply_map, py::arg("phi"), py::arg("element"));

  py::class_<Tower>(m, "Tower")
      .def_property_readonly("depth", &Tower::depth)
      .def_property_readonly("grid_size", &Tower::grid_size)
      .def("stage", &Tower::stage, py::arg("i"))
      .def("stage_map", &Tower::stage_map, py::arg("i"), py::arg("j"), py::return_value_policy::reference_internal);
  m.def(
      "build_tower",
      [](const BuildingBlock& seed, std::size_t depth, std::size_t grid_size, std::size_t cap) {
        return build_tower(seed, depth, TowerOptions{grid_size, cap});
      },
      py::arg("seed"), py::arg("depth"), py::arg("grid_size") = 256, py::arg("dimension_cap") = 6000);
  m.def(
      "eig_density",
      [](const Tower& t, std::size_t j, double x, std::size_t dense_limit) {
        const EigDensity e = eig_density(t, j, x, dense_limit);
        return py::make_tuple(e.delta, e.spectrum, e.dense);
      },
      py::arg("tower"), py::arg("j"), py::arg("x"), py::arg("dense_limit") = 512);
  m.def(
      "trace_unique_rate",
      [](const Tower& t, const BlockElement& f, std::size_t i, std::size_t j) {
        return gap_dict(trace_unique_rate(t, f, i, j));
      },
      py::arg("tower"), py::arg("f"), py::arg("i"), py::arg("j"));
  m.def(
      "simplicity_witness",
      [](const Tower& t, std::size_t i, const BlockElement& f, double lo, double hi, std::size_t max_depth) {
        const SimplicityWitness w = simplicity_witness(t, i, f, {lo, hi}, max_depth);
        py::dict d;
        d["found"] = w.found;
        d["stage"] = w.stage;
        d["branch"] = w.branch ? py::object(branch_tuple(*w.branch)) : py::none();
        d["min_witness_norm"] = w.min_witness_norm;
        return d;
      },
      py::arg("tower"), py::arg("i"), py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("max_depth") = 8);

  py::class_<Trace>(m, "Trace")
      .def(py::init<const BuildingBlock&>(), py::arg("block"))
      .def_static("point", &Trace::point, py::arg("block"), py::arg("t"), py::arg("weight") = 1.0)
      .def("add", &Trace::add, py::arg("t"), py::arg("weight"))
      .def_property_readonly("atoms",
                             [](const Trace& tau) {
                               py::list out;
                               for (const Atom& a : tau.atoms()) out.append(py::make_tuple(a.t, a.weight));
                               return out;
                             })
      .def_property_readonly("total_mass", &Trace::total_mass);
  m.def("eval_trace", &eval_trace, py::arg("trace"), py::arg("element"));
  m.def("pushforward_trace", &pushforward_trace, py::arg("phi"), py::arg("trace"));
  m.def("trace_norm", &trace_norm, py::arg("trace"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "razak");
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        py::gil_scoped_release release;
        return cli_main(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Runs the command-line driver in process and returns its exit code.");
}
