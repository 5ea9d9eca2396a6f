#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optpot/config.hpp"
#include "optpot/control.hpp"
#include "optpot/convex.hpp"
#include "optpot/cost.hpp"
#include "optpot/diagnostics.hpp"
#include "optpot/elliptic.hpp"
#include "optpot/errors.hpp"
#include "optpot/io.hpp"
#include "optpot/oracle.hpp"
#include "optpot/semilinear.hpp"

namespace py = pybind11;
using namespace optpot;

namespace {

py::array_t<double> to_numpy(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Field from_numpy(const GridPtr& grid, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw ArgumentError("field values must be one-dimensional");
  return Field(grid, std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_optpot, m) {
  m.doc() = "Optimal potentials for -Delta u + m u = f on the unit disc";

  auto base = py::register_exception<Error>(m, "OptpotError", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<MonotonicityError>(m, "MonotonicityError", base.ptr());
  py::register_exception<GridMismatch>(m, "GridMismatch", base.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<NegativePotential>(m, "NegativePotential", base.ptr());
  py::register_exception<ZeroDirection>(m, "ZeroDirection", base.ptr());
  py::register_exception<NoBracket>(m, "NoBracket", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::enum_<GridKind>(m, "GridKind").value("Radial", GridKind::Radial).value("Disc2D", GridKind::Disc2D);

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def_property_readonly("kind", &Grid::kind)
      .def_property_readonly("n", &Grid::n)
      .def_property_readonly("spacing", &Grid::spacing)
      .def_property_readonly("size", &Grid::size)
      .def_property_readonly("interior_count", &Grid::interior_count)
      .def_property_readonly("weights", [](const Grid& g) { return to_numpy(g.weights()); })
      .def_property_readonly("x",
                             [](const Grid& g) {
                               std::vector<double> v(g.size());
                               for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.x(i);
                               return to_numpy(v);
                             })
      .def_property_readonly("y",
                             [](const Grid& g) {
                               std::vector<double> v(g.size());
                               for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.y(i);
                               return to_numpy(v);
                             })
      .def_property_readonly("interior_mask",
                             [](const Grid& g) {
                               py::array_t<bool> out(static_cast<py::ssize_t>(g.size()));
                               for (std::size_t i = 0; i < g.size(); ++i) out.mutable_data()[i] = g.interior(i);
                               return out;
                             })
      .def("center_node", &Grid::center_node);

  m.def("build_radial", [](int n) { return std::const_pointer_cast<Grid>(build_radial(n)); }, py::arg("n"));
  m.def("build_disc", [](int n) { return std::const_pointer_cast<Grid>(build_disc(n)); }, py::arg("n"));

  py::class_<Field>(m, "Field")
      .def(py::init([](std::shared_ptr<Grid> g, double fill) { return Field(g, fill); }), py::arg("grid"),
           py::arg("fill") = 0.0)
      .def(py::init([](std::shared_ptr<Grid> g, py::array_t<double, py::array::c_style | py::array::forcecast> v) {
             return from_numpy(g, v);
           }),
           py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid", [](const Field& f) { return std::const_pointer_cast<Grid>(f.grid_ptr()); })
      .def_property_readonly("values", [](const Field& f) { return to_numpy(f.values()); })
      .def("__len__", &Field::size)
      .def("__getitem__", [](const Field& f, std::size_t i) {
        if (i >= f.size()) throw py::index_error();
        return f[i];
      });

  m.def("integrate", [](const Field& f) { return integrate(f.grid(), f); });
  m.def("total_variation", [](const Field& f) { return total_variation(f.grid(), f); });
  m.def("field_norms", [](const Field& f) {
    const Norms n = field_norms(f);
    return py::dict(py::arg("l1") = n.l1, py::arg("l2") = n.l2, py::arg("linf") = n.linf);
  });

  py::enum_<LawKind>(m, "LawKind")
      .value("Power", LawKind::Power)
      .value("Box", LawKind::Box)
      .value("BoxPlusLinear", LawKind::BoxPlusLinear)
      .value("BoxMinusLinear", LawKind::BoxMinusLinear);

  py::class_<PotentialLaw>(m, "PotentialLaw")
      .def_static("power", &PotentialLaw::power, py::arg("k"), py::arg("p"))
      .def_static("box", &PotentialLaw::box, py::arg("alpha"), py::arg("beta"))
      .def_static("box_plus_linear", &PotentialLaw::box_plus_linear, py::arg("alpha"), py::arg("beta"), py::arg("k"),
                  py::arg("p") = 1.0)
      .def_static("box_minus_linear", &PotentialLaw::box_minus_linear, py::arg("alpha"), py::arg("beta"),
                  py::arg("k"))
      .def_readwrite("kind", &PotentialLaw::kind)
      .def_readwrite("alpha", &PotentialLaw::alpha)
      .def_readwrite("beta", &PotentialLaw::beta)
      .def_readwrite("k", &PotentialLaw::k)
      .def_readwrite("p", &PotentialLaw::p)
      .def_readwrite("offset", &PotentialLaw::offset)
      .def("validate", &PotentialLaw::validate)
      .def("psi", [](const PotentialLaw& l, double s) { return psi_eval(l, s).to_double(); })
      .def("subdiff",
           [](const PotentialLaw& l, double s) {
             const SubdiffInterval sd = subdiff(l, s);
             return std::make_pair(sd.lo.to_double(), sd.hi.to_double());
           })
      .def("conjugate", [](const PotentialLaw& l, double t) { return conjugate_eval(l, t); })
      .def("h", [](const PotentialLaw& l, double t) { return h_eval(l, t); })
      .def("h_minus", [](const PotentialLaw& l, double t) { return h_minus_eval(l, t); })
      .def("g", [](const PotentialLaw& l, double t) { return g_eval(l, t); })
      .def("project", [](const PotentialLaw& l, double s) { return project(l, s); })
      .def("classify_h", [](const PotentialLaw& l) { return to_string(classify_h(l)); })
      .def("is_g_monotone", [](const PotentialLaw& l) {
        const MonotoneVerdict v = is_g_monotone(l);
        return std::make_pair(v.monotone, v.witness);
      });

  py::class_<MonotoneGraph>(m, "MonotoneGraph")
      .def_static("zero", &MonotoneGraph::zero)
      .def_static("linear", &MonotoneGraph::linear, py::arg("slope"))
      .def_static("cubic", &MonotoneGraph::cubic, py::arg("c"))
      .def_static("step", &MonotoneGraph::step, py::arg("threshold"), py::arg("height"))
      .def_static("auxiliary", &make_auxiliary_graph, py::arg("law"))
      .def("g_minus", [](const MonotoneGraph& g, double s) { return g.g_minus(s); })
      .def("g_plus", [](const MonotoneGraph& g, double s) { return g.g_plus(s); })
      .def("primitive", [](const MonotoneGraph& g, double s) { return g.primitive(s); })
      .def_readonly("jumps", &MonotoneGraph::jumps)
      .def("resolvent", [](const MonotoneGraph& g, double lambda, double t) { return resolvent(g, lambda, t); },
           py::arg("lam"), py::arg("t"));

  py::class_<CostIntegrand>(m, "CostIntegrand")
      .def_static("linear", &CostIntegrand::linear, py::arg("gamma"))
      .def_static("tracking", &CostIntegrand::tracking, py::arg("target"))
      .def_static("energy", &CostIntegrand::energy, py::arg("sign"), py::arg("f"))
      .def_property_readonly("kind", [](const CostIntegrand& j) { return to_string(j.kind()); })
      .def("integrate", &CostIntegrand::integrate);

  m.def(
      "solve_state",
      [](const Field& pot, const Field& f, double tol) { return solve_state(pot.grid_ptr(), pot, f, tol).u; },
      py::arg("m"), py::arg("f"), py::arg("tol") = 1e-10);

  py::class_<SemilinearSolution>(m, "SemilinearSolution")
      .def_readonly("u", &SemilinearSolution::u)
      .def_readonly("w", &SemilinearSolution::w)
      .def_readonly("energy", &SemilinearSolution::energy)
      .def_readonly("selection_violation", &SemilinearSolution::selection_violation)
      .def_readonly("sweeps", &SemilinearSolution::sweeps)
      .def_readonly("admm_iterations", &SemilinearSolution::admm_iterations);

  m.def(
      "solve_semilinear",
      [](const MonotoneGraph& g, const Field& f, double tol) {
        SemilinearOptions opt;
        opt.tol = tol;
        return solve_semilinear(f.grid_ptr(), g, f, opt);
      },
      py::arg("graph"), py::arg("f"), py::arg("tol") = 1e-14);

  py::class_<OptimizeOptions>(m, "OptimizeOptions")
      .def(py::init<>())
      .def_readwrite("tol", &OptimizeOptions::tol)
      .def_readwrite("max_iter", &OptimizeOptions::max_iter)
      .def_readwrite("eps0", &OptimizeOptions::eps0)
      .def_readwrite("backtrack", &OptimizeOptions::backtrack)
      .def_readwrite("max_halvings", &OptimizeOptions::max_halvings)
      .def_readwrite("solver_tol", &OptimizeOptions::solver_tol)
      .def_readwrite("paper_sign_third_example", &OptimizeOptions::paper_sign_third_example);

  py::class_<OptimizeReport>(m, "OptimizeReport")
      .def_readonly("m", &OptimizeReport::m)
      .def_readonly("u", &OptimizeReport::u)
      .def_readonly("z", &OptimizeReport::z)
      .def_readonly("cost_history", &OptimizeReport::cost_history)
      .def_readonly("iterations", &OptimizeReport::iterations)
      .def_readonly("optimality_residual", &OptimizeReport::optimality_residual)
      .def_readonly("l1_m", &OptimizeReport::l1_m)
      .def_readonly("tv_m", &OptimizeReport::tv_m)
      .def_readonly("bangbang_fraction", &OptimizeReport::bangbang_fraction)
      .def_readonly("converged", &OptimizeReport::converged)
      .def_readonly("stop_reason", &OptimizeReport::stop_reason);

  m.def("default_initial_potential",
        [](std::shared_ptr<Grid> g, const PotentialLaw& law) { return default_initial_potential(g, law); });
  m.def(
      "reduced_cost",
      [](const PotentialLaw& law, const CostIntegrand& j, const Field& f, const Field& pot, double tol) {
        return reduced_cost(f.grid_ptr(), law, j, f, pot, tol);
      },
      py::arg("law"), py::arg("j"), py::arg("f"), py::arg("m"), py::arg("solver_tol") = 1e-10);
  m.def(
      "optimize",
      [](const PotentialLaw& law, const CostIntegrand& j, const Field& f, std::optional<Field> m0,
         const OptimizeOptions& opt) {
        const Field start = m0 ? *m0 : default_initial_potential(f.grid_ptr(), law);
        py::gil_scoped_release release;
        return optimize(f.grid_ptr(), law, j, f, start, opt);
      },
      py::arg("law"), py::arg("j"), py::arg("f"), py::arg("m0") = py::none(), py::arg("options") = OptimizeOptions{});
  m.def(
      "solve_via_auxiliary",
      [](const PotentialLaw& law, const Field& f) {
        const AuxiliarySolution a = solve_via_auxiliary(f.grid_ptr(), law, f);
        return std::make_pair(a.u, a.m);
      },
      py::arg("law"), py::arg("f"));

  m.def(
      "run_property_suite",
      [](std::uint64_t seed, int trials) {
        const DiagnosticsReport r = run_property_suite(seed, trials);
        return py::dict(py::arg("all_ok") = r.all_ok(), py::arg("comparison_ok") = r.comparison_ok,
                        py::arg("contraction_ok") = r.contraction_ok, py::arg("symmetry_ok") = r.symmetry_ok,
                        py::arg("fenchel_ok") = r.fenchel_ok, py::arg("l1") = r.l1, py::arg("tv") = r.tv,
                        py::arg("counterexample") = r.counterexample);
      },
      py::arg("seed") = 42, py::arg("trials") = 50);

  py::class_<RadialOptimal>(m, "RadialOptimal")
      .def_readonly("s0", &RadialOptimal::s0)
      .def_readonly("a", &RadialOptimal::a)
      .def_readonly("ring_weight", &RadialOptimal::ring_weight)
      .def_readonly("bulk_density", &RadialOptimal::bulk_density)
      .def_readonly("total_mass", &RadialOptimal::total_mass);
  m.def("example1_characteristic", &example1_characteristic, py::arg("s0"), py::arg("a"));
  m.def("example1_radius", &example1_radius, py::arg("s0"));
  m.def("example1_state", &example1_state, py::arg("s0"), py::arg("a"), py::arg("r"));
  m.def("example1_solution", &example1_solution, py::arg("s0"));

  m.def("field_to_csv", [](const Field& f) { return field_to_csv(f); });
  m.def("field_from_csv", [](std::shared_ptr<Grid> g, const std::string& text) { return field_from_csv(g, text); });
}
