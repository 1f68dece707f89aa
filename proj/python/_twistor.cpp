#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/stl.h>

#include "twistor/cli.hpp"
#include "twistor/errors.hpp"
#include "twistor/determinant.hpp"
#include "twistor/gauge.hpp"
#include "twistor/harmonic.hpp"
#include "twistor/prepotential.hpp"
#include "twistor/verify.hpp"

namespace py = pybind11;
using namespace twistor;

namespace {

// Reports cross the boundary as JSON text; the package decodes them.
std::string dump(const VerificationReport& r) { return r.to_json().dump(); }

HarmonicFrame frame_of(const std::pair<cdouble, cdouble>& u) { return HarmonicFrame(u.first, u.second); }

py::dict transgression_dict(const TransgressionResult& t) {
  py::dict d;
  d["value"] = t.value;
  d["closed_form"] = t.closed_form;
  d["order"] = t.order;
  d["last_term"] = t.last_term;
  d["analytic_continuation"] = t.analytic_continuation;
  d["convergence_warning"] = t.convergence_warning;
  return d;
}

}  // namespace

PYBIND11_MODULE(_twistor, m) {
  m.doc() = "Harmonic-space instanton identities and the fourth-order transgression check";

  py::register_exception<NotInImage>(m, "NotInImage", PyExc_ValueError);
  py::register_exception<ChargeMismatch>(m, "ChargeMismatch", PyExc_ValueError);
  py::register_exception<StepTooLarge>(m, "StepTooLarge", PyExc_ArithmeticError);
  py::register_exception<GridTooCoarse>(m, "GridTooCoarse", PyExc_ArithmeticError);
  py::register_exception<ZeroModeAmbiguous>(m, "ZeroModeAmbiguous", PyExc_ArithmeticError);

  m.def("series_terms", [](const Vec4& x, double rho, int order) {
    const SeriesTermTable t = series_table(x, rho, order);
    std::vector<double> terms;
    for (const auto& [k, v] : t.terms) terms.push_back(v);
    return std::make_pair(terms, t.partial_sums);
  }, py::arg("x"), py::arg("rho") = 1.0, py::arg("order") = 30,
        "Terms and partial sums of log Det(1 + (1/D++)V++), without the 1/16pi^2.");
  m.def("transgression", [](const Vec4& x, double rho, int order) { return transgression_dict(transgression(x, rho, order)); },
        py::arg("x"), py::arg("rho") = 1.0, py::arg("order") = 30);
  m.def("transgression_closed_form", &transgression_closed_form, py::arg("t"));

  m.def("bpst_connection", [](const Vec4& x, double rho) { return bpst_connection(x, rho).cartesian(); },
        py::arg("x"), py::arg("rho") = 1.0, "A_mu as four 2x2 complex matrices.");
  m.def("reconstruct_connection", [](const Vec4& x, double rho) {
    return reconstruct_gauge_field(instanton_bridge(rho), x).cartesian();
  }, py::arg("x"), py::arg("rho") = 1.0, "A_mu from the harmonic bridge, before gauge alignment.");
  m.def("chern_density", [](const Vec4& x, double rho) {
    return chern_density(curvature([rho](const Vec4& y) { return bpst_connection(y, rho); }, x));
  }, py::arg("x"), py::arg("rho") = 1.0);
  m.def("self_duality_ratio", [](const Vec4& x, double rho) {
    const CurvatureTensor f = curvature([rho](const Vec4& y) { return bpst_connection(y, rho); }, x);
    return f.dotted_norm() / f.undotted_norm();
  }, py::arg("x"), py::arg("rho") = 1.0);
  m.def("topological_charge", [](double rho, double r_max, int n, double stretch) {
    return topological_charge(rho, r_max, n, stretch).charge;
  }, py::arg("rho") = 1.0, py::arg("r_max") = 100.0, py::arg("n") = 4000, py::arg("stretch") = 4.0);

  m.def("prepotential", [](const Vec4& x, const std::pair<cdouble, cdouble>& u, double rho) {
    return Mat2c(instanton_prepotential(rho)(x, frame_of(u)));
  }, py::arg("x"), py::arg("u"), py::arg("rho") = 1.0, "V++ at (x, u) with u+ = (a, b).");
  m.def("flatness_residual", [](const Vec4& x, const std::pair<cdouble, cdouble>& u, double rho) {
    return flatness_residual(instanton_prepotential(rho).at(x), v_minus_minus(instanton_bridge(rho)).at(x), frame_of(u));
  }, py::arg("x"), py::arg("u"), py::arg("rho") = 1.0);
  m.def("analyticity_residual", [](const Vec4& x, const std::pair<cdouble, cdouble>& u, double rho) {
    return analyticity_residual(instanton_prepotential(rho), x, frame_of(u));
  }, py::arg("x"), py::arg("u"), py::arg("rho") = 1.0);

  m.def("monomial_integral", [](int p1, int p2, int q1, int q2) {
    return monomial_integral(HarmonicMonomial::of(p1, p2, q1, q2));
  }, py::arg("p1"), py::arg("p2"), py::arg("q1"), py::arg("q2"));
  m.def("commutator_check", [](int max_degree) {
    const BracketCheck b = commutator_check(max_degree);
    return py::dict(py::arg("monomials") = b.monomials, py::arg("failures") = b.failures,
                    py::arg("max_residual") = b.max_residual);
  }, py::arg("max_degree") = 8);

  m.def("_verify_theorem", [](double rho, double r_max, int n, int order, const std::string& mode) {
    TheoremConfig c;
    c.rho = rho;
    c.r_max = r_max > 0.0 ? r_max : 8.0 * rho;
    c.n = n;
    c.order = order;
    if (mode != "series" && mode != "analytic") throw std::invalid_argument("mode must be series or analytic");
    c.mode = mode == "analytic" ? TransgressionMode::analytic : TransgressionMode::series;
    py::gil_scoped_release release;
    return dump(verify_theorem(c));
  }, py::arg("rho"), py::arg("r_max"), py::arg("n"), py::arg("order"), py::arg("mode"));
  m.def("_run_identity_suite", [](std::uint64_t seed, const std::vector<std::string>& groups, bool corrupt) {
    SuiteConfig c = SuiteConfig::defaults(seed);
    if (!groups.empty()) c.groups = {groups.begin(), groups.end()};
    c.corrupt_epsilon = corrupt;
    py::gil_scoped_release release;
    return dump(run_identity_suite(c));
  }, py::arg("seed"), py::arg("groups"), py::arg("corrupt_epsilon"));
  m.def("_execute", [](const std::string& config_json) {
    const RunConfig c = RunConfig::from_json(nlohmann::json::parse(config_json));
    py::gil_scoped_release release;
    return dump(execute(c));
  }, py::arg("config_json"));
}
