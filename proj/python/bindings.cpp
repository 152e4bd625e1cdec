#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cnoidal/asymptotics.hpp"
#include "cnoidal/band.hpp"
#include "cnoidal/elliptic.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/hill.hpp"
#include "cnoidal/orbit.hpp"
#include "cnoidal/shoaling.hpp"
#include "cnoidal/virasoro.hpp"
#include "cnoidal/weierstrass.hpp"

namespace py = pybind11;
using namespace cnoidal;

namespace {

WedgeSide parse_side(const std::string& s) {
  if (s == "below_wedge") return WedgeSide::below_wedge;
  if (s == "above_wedge") return WedgeSide::above_wedge;
  throw DomainError("side must be 'below_wedge' or 'above_wedge'");
}

py::tuple orbit_tuple(const OrbitClass& oc) { return py::make_tuple(to_string(oc.kind), oc.winding); }

Profile cnoidal_as_profile(double m, double V, double c) {
  const CnoidalParams cp{m, V, c};
  return Profile::from_function([cp](double x) { return cnoidal_profile(cp, x, 0.0); });
}

}  // namespace

PYBIND11_MODULE(cnoidal, mod) {
  mod.doc() = "Virasoro orbits of cnoidal KdV waves";

  static py::exception<DomainError> domain_exc(mod, "DomainError", PyExc_ValueError);
  static py::exception<NumericalError> numerical_exc(mod, "NumericalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(domain_exc, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical_exc, e.what());
    }
  });

  mod.def("ellint_K", &ellint_K, py::arg("m"));
  mod.def("ellint_E", &ellint_E, py::arg("m"));
  mod.def(
      "jacobi",
      [](double u, double m) {
        const auto j = jacobi(u, m);
        return py::make_tuple(j.sn, j.cn, j.dn);
      },
      py::arg("u"), py::arg("m"));

  mod.def("wp", [](cplx z, double m) { return wp(z, lattice(m)); }, py::arg("z"), py::arg("m"));
  mod.def("zeta", [](cplx z, double m) { return zeta(z, lattice(m)); }, py::arg("z"), py::arg("m"));
  mod.def("sigma", [](cplx z, double m) { return sigma(z, lattice(m)); }, py::arg("z"), py::arg("m"));
  mod.def("wp_inverse", [](double V, double m) { return wp_inverse(V, lattice(m)); }, py::arg("V"), py::arg("m"));

  mod.def(
      "cnoidal_profile", [](double m, double V, double c, double x, double tau) {
        return cnoidal_profile({m, V, c}, x, tau);
      },
      py::arg("m"), py::arg("V"), py::arg("c"), py::arg("x"), py::arg("tau") = 0.0);
  mod.def("monodromy_trace", &monodromy_trace, py::arg("m"), py::arg("V"));
  mod.def(
      "uniform_representative",
      [](double m, double V) {
        const auto r = uniform_representative(m, V);
        return py::make_tuple(r.value, r.has_rest_frame);
      },
      py::arg("m"), py::arg("V"));
  mod.def("classify", [](double m, double V) { return orbit_tuple(classify(m, V)); }, py::arg("m"), py::arg("V"));
  mod.def("dk_dV", &dk_dV, py::arg("m"), py::arg("V"));
  mod.def(
      "level_curve", [](double kc, double m, const std::string& side) { return level_curve(kc, m, parse_side(side)); },
      py::arg("kc"), py::arg("m"), py::arg("side"));

  mod.def(
      "floquet_trace", [](double m, double V, double c) { return floquet_monodromy(cnoidal_as_profile(m, V, c), c).trace(); },
      py::arg("m"), py::arg("V"), py::arg("c") = 1.0);
  mod.def(
      "winding_number", [](double m, double V, double c) { return winding_number(cnoidal_as_profile(m, V, c), c); },
      py::arg("m"), py::arg("V"), py::arg("c") = 1.0);
  mod.def(
      "hill_trace", [](std::function<double(double)> p, double c) {
        return floquet_monodromy(Profile::from_function(std::move(p)), c).trace();
      },
      py::arg("p"), py::arg("c"));

  mod.def(
      "crystal_momentum",
      [](double E, double m) {
        const auto b = crystal_momentum(E, m);
        return py::make_tuple(b.kappa_ell, b.in_gap);
      },
      py::arg("energy"), py::arg("m"));
  mod.def("band_edges", &band_edges, py::arg("m"));
  mod.def(
      "numeric_band_gaps",
      [](int N, double m, double E_max) {
        std::vector<std::pair<double, double>> out;
        for (const auto& g : numeric_band_gaps(N, m, E_max)) out.emplace_back(g.lo, g.hi);
        return out;
      },
      py::arg("N"), py::arg("m"), py::arg("E_max"));

  mod.def("schwarzian_fourier", [](std::vector<double> a, std::vector<double> phi, double x) {
    return schwarzian(CircleDiffeo::fourier(std::move(a), std::move(phi)), x);
  });

  mod.def("k_large_V", [](double m, double V) { return k_large_V(m, V).value; });
  mod.def("V_near_m0", [](double kc, double m) { return V_near_m0(kc, m).value; });
  mod.def("V_near_m1", [](double kc, double m) { return V_near_m1(kc, m).value; });
  mod.def("convergence_report", [] {
    py::list out;
    for (const auto& c : convergence_report()) {
      py::dict d;
      d["name"] = c.name;
      d["ratios"] = c.ratios;
      d["errors"] = c.errors;
      d["pass"] = c.pass;
      out.append(d);
    }
    return out;
  });

  mod.def("critical_m", &critical_m);
  mod.def("zero_average_V", &zero_average_V, py::arg("m"));
  mod.def("critical_depth", &critical_depth, py::arg("T"), py::arg("F"), py::arg("rho"), py::arg("g"));
  mod.def("depth_from_m", &depth_from_m, py::arg("m"), py::arg("T"), py::arg("F"), py::arg("rho"), py::arg("g"));
  mod.def(
      "shoaling_path",
      [](const std::vector<double>& hs, double T, double F, double rho, double g) {
        const auto p = shoaling_path(hs, T, F, rho, g);
        py::list pts;
        for (const auto& q : p.points) {
          py::dict d;
          d["h"] = q.h;
          d["lambda"] = q.lambda;
          d["m"] = q.m;
          d["V"] = q.V;
          d["kc"] = q.kc;
          d["orbit"] = orbit_tuple(q.orbit);
          d["in_wedge"] = q.in_wedge;
          pts.append(d);
        }
        py::dict out;
        out["points"] = pts;
        out["wedge_entry"] = p.wedge_entry ? py::object(py::int_(*p.wedge_entry)) : py::object(py::none());
        out["crossing_depth"] = p.crossing_depth ? py::object(py::float_(*p.crossing_depth)) : py::object(py::none());
        return out;
      },
      py::arg("h_values"), py::arg("T"), py::arg("F"), py::arg("rho"), py::arg("g"));
}
