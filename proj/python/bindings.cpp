#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coconvex/checks.hpp"
#include "coconvex/io.hpp"
#include "coconvex/solver.hpp"
#include "coconvex/svg.hpp"

namespace py = pybind11;

namespace {

using namespace coconvex;

DiscreteMeasure measure_from_pairs(const Cone& cone,
                                   const std::vector<std::pair<Vec, double>>& atoms) {
  std::vector<MeasureAtom> converted;
  converted.reserve(atoms.size());
  for (const auto& [u, w] : atoms) converted.push_back({u, w});
  return DiscreteMeasure::make(cone, std::move(converted));
}

std::vector<std::pair<Vec, double>> measure_to_pairs(const DiscreteMeasure& mu) {
  std::vector<std::pair<Vec, double>> out;
  out.reserve(static_cast<size_t>(mu.size()));
  for (const MeasureAtom& atom : mu.atoms()) out.emplace_back(atom.u, atom.w);
  return out;
}

py::dict report_to_dict(const CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["left"] = r.left;
  d["right"] = r.right;
  d["slack"] = r.slack;
  d["pass"] = r.pass;
  d["equality"] = r.equality;
  d["dilation_detected"] = r.dilation_detected;
  d["notes"] = r.notes;
  py::dict extras;
  for (const auto& [key, value] : r.extras) extras[key.c_str()] = value;
  d["extras"] = extras;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "coconvex sets over pointed cones: support geometry, L_p algebra, "
            "Minkowski-problem solving and inequality checks";

  py::register_exception<Error>(m, "CoconvexError");

  py::class_<Cone>(m, "Cone")
      .def_static(
          "make",
          [](int n, const std::vector<Vec>& generators) { return Cone::make(n, generators); },
          py::arg("n"), py::arg("generators"),
          "Pointed full-dimensional cone spanned by unit generators")
      .def_property_readonly("n", &Cone::dim)
      .def_property_readonly("generators", &Cone::generators)
      .def_property_readonly("facet_normals", &Cone::facet_normals)
      .def_property_readonly("zeta", &Cone::zeta)
      .def("polar", &Cone::polar)
      .def("contains", &Cone::contains, py::arg("x"), py::arg("tol") = kGeomTol)
      .def("in_omega", &Cone::in_omega, py::arg("u"), py::arg("margin") = kGeomTol)
      .def("__repr__", [](const Cone& c) {
        return "<Cone n=" + std::to_string(c.dim()) + " generators=" +
               std::to_string(c.generators().size()) + ">";
      });

  py::class_<CCoconvexSet>(m, "CCoconvexSet")
      .def_property_readonly("cone", &CCoconvexSet::cone)
      .def_property_readonly("omega",
                             [](const CCoconvexSet& a) { return a.omega().directions(); })
      .def_property_readonly("support", &CCoconvexSet::support)
      .def_property_readonly("facet_measures", &CCoconvexSet::facet_measures)
      .def_property_readonly("volume", &CCoconvexSet::covolume)
      .def_property_readonly("tstar", &CCoconvexSet::tstar)
      .def("support_at", &CCoconvexSet::support_at, py::arg("u"))
      .def("surface_measure",
           [](const CCoconvexSet& a) { return measure_to_pairs(a.surface_measure()); })
      .def("lp_surface_measure",
           [](const CCoconvexSet& a, double p) {
             return measure_to_pairs(a.lp_surface_measure(p));
           },
           py::arg("p"))
      .def("cone_volume_measure",
           [](const CCoconvexSet& a) { return measure_to_pairs(a.cone_volume_measure()); })
      .def("dilate", &CCoconvexSet::dilate, py::arg("alpha"))
      .def("__repr__", [](const CCoconvexSet& a) {
        return "<CCoconvexSet n=" + std::to_string(a.cone().dim()) + " omega=" +
               std::to_string(a.omega().size()) + " volume=" + std::to_string(a.covolume()) +
               ">";
      });

  m.def(
      "wulff",
      [](const Cone& cone, const std::vector<Vec>& omega, const std::vector<double>& f) {
        return CCoconvexSet::wulff(cone, DirectionSet::make(cone, omega), f);
      },
      py::arg("cone"), py::arg("omega"), py::arg("f"),
      "Coconvex set cut from the cone by the halfspaces {x . u <= -f(u)}");

  m.def(
      "p_co_sum",
      [](double alpha1, const CCoconvexSet& a1, double alpha2, const CCoconvexSet& a2,
         double p) { return p_co_sum(alpha1, a1, alpha2, a2, PExponent::of(p)); },
      py::arg("alpha1"), py::arg("a1"), py::arg("alpha2"), py::arg("a2"), py::arg("p"));
  m.def(
      "log_co_sum",
      [](double tau, const CCoconvexSet& a1, const CCoconvexSet& a2) {
        return log_co_sum(TauWeight(tau), a1, a2);
      },
      py::arg("tau"), py::arg("a1"), py::arg("a2"));

  m.def("mixed_volume_1", &mixed_volume_1, py::arg("a0"), py::arg("a1"));
  m.def("lp_mixed_volume", &lp_mixed_volume, py::arg("a"), py::arg("b"), py::arg("p"));
  m.def("log_mixed_volume", &log_mixed_volume, py::arg("a1"), py::arg("a2"));
  m.def("variational_derivative", &variational_derivative, py::arg("a"), py::arg("f"),
        py::arg("p"));

  m.def(
      "solve_lp_minkowski",
      [](const Cone& cone, const std::vector<std::pair<Vec, double>>& atoms, double p,
         bool normalized) {
        SolverOptions options;
        if (normalized) options.output_form = OutputForm::Normalized;
        const SolveResult r = solve_lp_minkowski(cone, measure_from_pairs(cone, atoms), p,
                                                 options);
        py::dict d;
        d["solution"] = r.solution;
        d["c"] = r.c;
        d["residual"] = r.residual;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        d["normalized"] = r.normalized;
        return d;
      },
      py::arg("cone"), py::arg("atoms"), py::arg("p"), py::arg("normalized") = false,
      "Solve S_{n-1,p}(A, .) = mu for the atoms (u, w); returns solution and audit data");

  m.def(
      "solve_log_minkowski",
      [](const Cone& cone, const std::vector<std::pair<Vec, double>>& atoms) {
        const SolveResult r = solve_log_minkowski(cone, measure_from_pairs(cone, atoms));
        py::dict d;
        d["solution"] = r.solution;
        d["c"] = r.c;
        d["residual"] = r.residual;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("cone"), py::arg("atoms"),
      "Solve for the set whose cone volume measure is mu");

  m.def(
      "run_check_suite",
      [](const std::string& suite, const std::vector<unsigned long long>& seeds, int n,
         int omega_size) {
        py::list out;
        for (const CheckReport& r : run_check_suite(suite, seeds, n, omega_size)) {
          out.append(report_to_dict(r));
        }
        return out;
      },
      py::arg("suite"), py::arg("seeds"), py::arg("n"), py::arg("omega_size") = 3);

  m.def("render_svg", &render_svg, py::arg("a"), py::arg("size_px") = 640);

  m.def(
      "to_json",
      [](const CCoconvexSet& a) { return coconvex_to_json(a).dump(2); },
      py::arg("a"), "Serialize a set to its JSON record");
  m.def(
      "from_json",
      [](const std::string& text) {
        return coconvex_from_json(parse_json_text(text, "<string>"));
      },
      py::arg("text"), "Rebuild a set from its JSON record");
}
