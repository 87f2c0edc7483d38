#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crpldp/checks.hpp"
#include "crpldp/mc.hpp"
#include "crpldp/model.hpp"
#include "crpldp/rate.hpp"

namespace py = pybind11;
using namespace crpldp;

namespace {

// Python side sees extended reals as plain floats (math.inf round-trips).
double unwrap(const ExtValue& v) { return v.value(); }

Region region_box(std::vector<double> lo, std::vector<double> hi, bool open) {
  return Region::box(std::move(lo), std::move(hi), open ? Closure::Open : Closure::Closed);
}

}  // namespace

PYBIND11_MODULE(crpldp, m) {
  m.doc() = "Rate functions and Monte Carlo estimators for terminating "
            "compound renewal processes under a Gibbs change of measure";

  py::class_<JumpLaw>(m, "JumpLaw")
      .def_static("from_json", &JumpLaw::from_json, py::arg("json_text"))
      .def("to_json", &JumpLaw::to_json)
      .def_readonly("dim", &JumpLaw::dim)
      .def_readonly("p_terminate", &JumpLaw::p_terminate)
      .def("mean_tau_finite", &JumpLaw::mean_tau_finite);

  py::class_<Region>(m, "Region")
      .def_static("box", &region_box, py::arg("lo"), py::arg("hi"), py::arg("open") = false)
      .def_static("whole_space", &Region::whole_space, py::arg("dim"))
      .def("contains", &Region::contains, py::arg("x"));

  py::class_<PathEstimate>(m, "PathEstimate")
      .def_readonly("t", &PathEstimate::t)
      .def_property_readonly("log_value",
                             [](const PathEstimate& e) { return e.log_value.value(); })
      .def_readonly("replicates", &PathEstimate::replicates)
      .def_readonly("half_width_log", &PathEstimate::half_width_log)
      .def_readonly("hits", &PathEstimate::hits);

  py::class_<EmpiricalRate>(m, "EmpiricalRate")
      .def_readonly("slope", &EmpiricalRate::slope)
      .def_readonly("stderr_slope", &EmpiricalRate::stderr_slope);

  m.def("eval_A",
        [](const JumpLaw& law, double lam, const std::vector<double>& mu) {
          return unwrap(eval_A(law, lam, mu));
        },
        py::arg("law"), py::arg("lam"), py::arg("mu"));
  m.def("A_of_mu",
        [](const JumpLaw& law, const std::vector<double>& mu) {
          return unwrap(A_of_mu(law, mu));
        },
        py::arg("law"), py::arg("mu"));
  m.def("lambda_plus", [](const JumpLaw& law) { return unwrap(lambda_plus(law)); });
  m.def("lambda_minus", [](const JumpLaw& law) { return unwrap(lambda_minus(law)); });
  m.def("D",
        [](const JumpLaw& law, const std::vector<double>& alpha) {
          return unwrap(eval_D(law, alpha).value);
        },
        py::arg("law"), py::arg("alpha"));
  m.def("D_gamma",
        [](const JumpLaw& law, const std::vector<double>& alpha, double gamma) {
          return unwrap(eval_D_gamma(law, alpha, ExtValue(gamma)).value);
        },
        py::arg("law"), py::arg("alpha"), py::arg("gamma"));
  m.def("D_plus",
        [](const JumpLaw& law, const std::vector<double>& alpha) {
          return unwrap(eval_D_plus(law, alpha));
        },
        py::arg("law"), py::arg("alpha"));
  m.def("D_minus",
        [](const JumpLaw& law, const std::vector<double>& alpha) {
          return unwrap(eval_D_minus(law, alpha));
        },
        py::arg("law"), py::arg("alpha"));
  m.def("Lambda",
        [](const JumpLaw& law, double theta, const std::vector<double>& alpha) {
          return unwrap(eval_Lambda(law, theta, alpha));
        },
        py::arg("law"), py::arg("theta"), py::arg("alpha"));
  m.def("D_Lambda",
        [](const JumpLaw& law, double theta, const std::vector<double>& alpha) {
          return unwrap(eval_D_Lambda(law, theta, alpha));
        },
        py::arg("law"), py::arg("theta"), py::arg("alpha"));
  m.def("choose_lambda_star", &choose_lambda_star, py::arg("law"));
  m.def("estimate_unnormalized", &estimate_unnormalized, py::arg("law"), py::arg("t"),
        py::arg("B"), py::arg("n_rep"), py::arg("seed"));
  m.def("estimate_gibbs", &estimate_gibbs, py::arg("law"), py::arg("t"), py::arg("B"),
        py::arg("n_rep"), py::arg("seed"));
  m.def("estimate_tilted",
        [](const JumpLaw& law, double t, const Region& B, long long n_rep,
           std::uint64_t seed, double lambda_star) {
          const double ls = lambda_star > 0.0 ? lambda_star : choose_lambda_star(law);
          return estimate_unnormalized_tilted(make_tilted(law, ls), t, B, n_rep, seed);
        },
        py::arg("law"), py::arg("t"), py::arg("B"), py::arg("n_rep"), py::arg("seed"),
        py::arg("lambda_star") = 0.0);
  m.def("empirical_rate",
        [](const JumpLaw& law, const Region& B, const std::vector<double>& t_grid,
           long long n_rep, std::uint64_t seed, const std::string& method) {
          return empirical_rate(law, B, t_grid, n_rep, seed,
                                method == "tilted" ? McMethod::Tilted : McMethod::Naive);
        },
        py::arg("law"), py::arg("B"), py::arg("t_grid"), py::arg("n_rep"), py::arg("seed"),
        py::arg("method") = "tilted");
  m.def("truncation_radius", &truncation_radius, py::arg("gamma"), py::arg("lambda_tilde"),
        py::arg("N"));
  m.def("identity_report", [](const JumpLaw& law, double tol) {
    py::list out;
    for (const auto& c : identity_battery(law, tol)) {
      py::dict d;
      d["name"] = c.name;
      d["expected"] = c.expected;
      d["observed"] = c.observed;
      d["pass"] = c.pass;
      out.append(d);
    }
    return out;
  }, py::arg("law"), py::arg("tol") = 1e-6);
}
