#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hermweb/classify.hpp"
#include "hermweb/cli.hpp"
#include "hermweb/error.hpp"
#include "hermweb/expr.hpp"
#include "hermweb/flow.hpp"
#include "hermweb/geometry.hpp"
#include "hermweb/model_manifolds.hpp"
#include "hermweb/monge_ampere.hpp"

namespace py = pybind11;
using namespace hermweb;

namespace {

using CArray = py::array_t<complex, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const PeriodicGrid& grid) {
  std::vector<py::ssize_t> shape;
  for (int s : grid.sizes()) shape.push_back(s);
  return shape;
}

CArray to_numpy(const ScalarField& f) {
  CArray out(shape_of(f.grid()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

ScalarField from_numpy(const PeriodicGrid& grid, const CArray& a) {
  if (static_cast<std::size_t>(a.size()) != grid.size())
    throw InputError("array size does not match the grid");
  return ScalarField(grid, std::vector<complex>(a.data(), a.data() + a.size()));
}

// (n, n, *grid) array from a row-major block of fields.
CArray block_to_numpy(const PeriodicGrid& grid, const std::vector<ScalarField>& block) {
  const int n = grid.dim();
  auto shape = shape_of(grid);
  shape.insert(shape.begin(), {n, n});
  CArray out(shape);
  auto* dst = out.mutable_data();
  for (const auto& f : block) dst = std::copy(f.values().begin(), f.values().end(), dst);
  return out;
}

std::vector<ScalarField> block_from_numpy(const PeriodicGrid& grid, const CArray& a) {
  const auto n = static_cast<std::size_t>(grid.dim());
  if (static_cast<std::size_t>(a.size()) != n * n * grid.size())
    throw InputError("metric array must have shape (n, n, *grid)");
  std::vector<ScalarField> block;
  for (std::size_t k = 0; k < n * n; ++k) {
    const complex* p = a.data() + k * grid.size();
    block.emplace_back(grid, std::vector<complex>(p, p + grid.size()));
  }
  return block;
}

py::dict newton_history(const std::vector<NewtonRecord>& h) {
  std::vector<int> it, lin;
  std::vector<double> res, b, step;
  for (const auto& r : h) {
    it.push_back(r.iteration);
    res.push_back(r.residual);
    b.push_back(r.b);
    step.push_back(r.step);
    lin.push_back(r.linear_iterations);
  }
  py::dict d;
  d["iteration"] = it;
  d["residual"] = res;
  d["b"] = b;
  d["step"] = step;
  d["linear_iterations"] = lin;
  return d;
}

py::dict solution_dict(const MASolution& s) {
  py::dict d;
  d["phi"] = to_numpy(s.phi);
  d["b"] = s.b;
  d["residual"] = s.residual();
  d["iterations"] = s.iterations();
  d["history"] = newton_history(s.history);
  d["metric"] = s.metric_out;
  return d;
}

py::dict example_dict(const ExampleReport& r) {
  py::dict checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["computed"] = c.computed;
    d["expected"] = c.expected;
    d["tolerance"] = c.tolerance;
    d["pass"] = c.pass;
    d["detail"] = c.detail;
    checks[py::str(c.name)] = d;
  }
  py::dict out;
  out["example"] = r.example;
  out["passed"] = r.passed();
  out["checks"] = checks;
  return out;
}

SolverConfig config(double tol, int max_iter) {
  SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.max_iterations = max_iter;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_hermweb, m) {
  m.doc() = "hermweb core bindings";
  m.attr("__version__") = HERMWEB_VERSION;

  auto error = py::register_exception<Error>(m, "Error");
  auto input_error = py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", input_error.ptr());
  py::register_exception<DomainError>(m, "DomainError", input_error.ptr());
  py::register_exception<PositivityError>(m, "PositivityError", error.ptr());
  py::register_exception<SolverFailure>(m, "SolverFailure", error.ptr());
  py::register_exception<FlowFailure>(m, "FlowFailure", error.ptr());

  py::class_<PeriodicGrid>(m, "Grid")
      .def(py::init([](int n, std::vector<int> sizes) { return PeriodicGrid(n, sizes); }),
           py::arg("n"), py::arg("sizes"))
      .def_property_readonly("n", &PeriodicGrid::dim)
      .def_property_readonly("shape", [](const PeriodicGrid& g) { return shape_of(g); })
      .def_property_readonly("size", &PeriodicGrid::size)
      .def("coordinates",
           [](const PeriodicGrid& g) {
             py::array_t<double> out({static_cast<py::ssize_t>(g.size()),
                                      static_cast<py::ssize_t>(g.real_dim())});
             auto r = out.mutable_unchecked<2>();
             for (std::size_t k = 0; k < g.size(); ++k) {
               const auto c = g.coordinates(k);
               for (int a = 0; a < g.real_dim(); ++a)
                 r(static_cast<py::ssize_t>(k), a) = c[static_cast<std::size_t>(a)];
             }
             return out;
           })
      .def("__repr__", &PeriodicGrid::describe);

  py::class_<HermitianMetricField>(m, "Metric")
      .def(py::init([](const PeriodicGrid& grid, const CArray& g) {
             return HermitianMetricField(grid, block_from_numpy(grid, g));
           }),
           py::arg("grid"), py::arg("g"))
      .def_static("identity", &HermitianMetricField::identity)
      .def_property_readonly("grid", &HermitianMetricField::grid)
      .def_property_readonly("n", &HermitianMetricField::dim)
      .def("array", [](const HermitianMetricField& g) { return block_to_numpy(g.grid(), g.components()); })
      .def("determinant", [](const HermitianMetricField& g) { return to_numpy(g.determinant()); })
      .def("conformal", [](const HermitianMetricField& g, const CArray& u) {
        return g.conformal(from_numpy(g.grid(), u));
      })
      .def("distance", &HermitianMetricField::distance);

  py::class_<ClassReport>(m, "ClassReport")
      .def_readonly("tolerance", &ClassReport::tolerance)
      .def_readonly("kahler_residual", &ClassReport::kahler_residual)
      .def_readonly("balanced_residual", &ClassReport::balanced_residual)
      .def_readonly("gauduchon_residual", &ClassReport::gauduchon_residual)
      .def_readonly("astheno_kahler_residual", &ClassReport::astheno_kahler_residual)
      .def_readonly("strongly_gauduchon_defect", &ClassReport::strongly_gauduchon_defect)
      .def_readonly("kahler", &ClassReport::kahler)
      .def_readonly("balanced", &ClassReport::balanced)
      .def_readonly("gauduchon", &ClassReport::gauduchon)
      .def_readonly("astheno_kahler", &ClassReport::astheno_kahler)
      .def_readonly("strongly_gauduchon", &ClassReport::strongly_gauduchon)
      .def_readonly("astheno_kahler_vacuous", &ClassReport::astheno_kahler_vacuous);

  m.def("chern_ricci", [](const HermitianMetricField& g) {
    return block_to_numpy(g.grid(), hermitian_coefficients(chern_ricci(g)));
  }, "Hermitian matrix field of the Chern-Ricci form, shape (n, n, *grid).");
  m.def("ricci_norm", &ricci_norm);
  m.def("ricci_potential", [](const HermitianMetricField& g) { return to_numpy(ricci_potential(g)); });
  m.def("conformal_flatten", &conformal_flatten);
  m.def("classify", &classify, py::arg("g"), py::arg("tol"));

  m.def("hodge_root_roundtrip", [](const HermitianMetricField& g) {
    return hodge_root(power(g.kahler_form(), g.dim() - 1));
  }, "Recover g from omega_g^{n-1}.");

  m.def("solve_ma2",
        [](const HermitianMetricField& g, const CArray& F, double tol, int max_iter) {
          return solution_dict(solve_ma2(g, from_numpy(g.grid(), F), config(tol, max_iter)));
        },
        py::arg("g"), py::arg("F"), py::arg("tol") = 1e-10, py::arg("max_iter") = 40);
  m.def("solve_ma3",
        [](const HermitianMetricField& g, const HermitianMetricField& g0, const CArray& F,
           double tol, int max_iter) {
          return solution_dict(
              solve_ma3(g, g0, from_numpy(g.grid(), F), config(tol, max_iter)));
        },
        py::arg("g"), py::arg("g0"), py::arg("F"), py::arg("tol") = 1e-10,
        py::arg("max_iter") = 40);

  m.def("run_flow",
        [](const HermitianMetricField& g0, double tol, double dt0, int max_steps) {
          FlowOptions opt;
          opt.tolerance = tol;
          opt.dt0 = dt0;
          opt.max_steps = max_steps;
          const auto r = run_flow(g0, opt);
          std::vector<double> t, dt, norm;
          for (const auto& h : r.history) {
            t.push_back(h.t);
            dt.push_back(h.dt);
            norm.push_back(h.ricci_norm);
          }
          py::dict d;
          d["metric"] = r.state.g;
          d["t"] = r.state.t;
          d["ricci_norm"] = r.state.ricci_norm;
          d["history"] = py::dict(py::arg("t") = t, py::arg("dt") = dt,
                                  py::arg("ricci_norm") = norm);
          return d;
        },
        py::arg("g0"), py::arg("tol") = 1e-6, py::arg("dt0") = 1e-4,
        py::arg("max_steps") = 100000);

  py::class_<Expr>(m, "Expr")
      .def("__str__", &Expr::to_string)
      .def("__eq__", [](const Expr& a, const Expr& b) { return a == b; })
      .def_property_readonly("depth", &Expr::depth);
  m.def("parse_expr", &parse_expr, py::arg("text"), py::arg("n"));
  m.def("evaluate", [](const Expr& e, const PeriodicGrid& grid) {
    return to_numpy(evaluate(e, grid));
  });

  m.def("hopf_sample", &hopf_sample, py::arg("n"), py::arg("count"), py::arg("seed"));
  m.def("hopf_check", [](const std::vector<HopfPoint>& pts, int n) {
    return example_dict(hopf_check(pts, n));
  });
  m.def("nakamura_sample", [](const std::vector<complex>& ts, int per_t, std::uint64_t seed) {
    std::vector<std::pair<complex, complex>> out;
    for (const auto& p : nakamura_sample(ts, per_t, seed)) out.emplace_back(p.z1, p.t);
    return out;
  });
  m.def("nakamura_check", [](const std::vector<std::pair<complex, complex>>& samples) {
    std::vector<NakamuraPoint> pts;
    for (const auto& [z, t] : samples) pts.push_back({z, t});
    return example_dict(nakamura_check(pts));
  });
  m.def("yoshihara_check", [](std::int64_t bound) { return example_dict(yoshihara_check(bound)); },
        py::arg("bound") = 1000000);
  m.def("flat_volume_descent_check", [] { return example_dict(flat_volume_descent_check()); });

  m.def("run_command",
        [](const std::string& command, std::optional<std::string> spec,
           std::optional<double> tol, std::optional<int> max_iter, std::vector<int> grid,
           std::optional<std::string> out, bool csv, std::optional<std::uint64_t> seed,
           std::optional<std::string> name, std::optional<std::int64_t> bound,
           std::optional<complex> t) {
          CommandOptions o;
          o.command = command;
          if (spec) o.spec = *spec;
          o.tol = tol;
          o.max_iter = max_iter;
          o.grid = std::move(grid);
          if (out) o.out = *out;
          o.csv = csv;
          o.seed = seed;
          o.name = std::move(name);
          o.bound = bound;
          o.t = t;
          const auto outcome = run_command(o);
          return py::make_tuple(outcome.exit_code, outcome.report.dump());
        },
        py::arg("command"), py::arg("spec") = py::none(), py::arg("tol") = py::none(),
        py::arg("max_iter") = py::none(), py::arg("grid") = std::vector<int>{},
        py::arg("out") = py::none(), py::arg("csv") = false, py::arg("seed") = py::none(),
        py::arg("name") = py::none(), py::arg("bound") = py::none(), py::arg("t") = py::none(),
        "Run a CLI command in-process; returns (exit_code, report_json_text).");
}
