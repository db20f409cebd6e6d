#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>

#include "qmoment/determinacy.hpp"
#include "qmoment/errors.hpp"
#include "qmoment/moments.hpp"
#include "qmoment/qcore.hpp"
#include "qmoment/report.hpp"
#include "qmoment/witness.hpp"
#include "qmoment/zoo.hpp"

namespace py = pybind11;
using namespace qmoment;

namespace {

// Opaque handle around a shared q-density.
struct Density {
  DensityPtr ptr;
  std::string label;
};

Density wrap(QDensity d, std::string label) {
  return {std::make_shared<const QDensity>(std::move(d)), std::move(label)};
}

std::string text(const Real& x, const PrecisionContext& ctx) { return x.to_string(ctx.digits()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "q-moments, determinacy criteria and moment-equal witnesses for q-densities";

  auto base = py::register_exception<Error>(m, "QMomentError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<NegativeDensity>(m, "NegativeDensity", base.ptr());
  py::register_exception<NotNormalized>(m, "NotNormalized", base.ptr());
  py::register_exception<QMismatch>(m, "QMismatch", base.ptr());
  py::register_exception<InfeasibleWitness>(m, "InfeasibleWitness", base.ptr());
  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", base.ptr());

  py::class_<Density>(m, "Density")
      .def_property_readonly("q", [](const Density& d) { return d.ptr->q().text(); })
      .def_property_readonly("kind",
                             [](const Density& d) {
                               switch (d.ptr->kind()) {
                                 case QDensity::Kind::Callable:
                                   return "callable";
                                 case QDensity::Kind::Table:
                                   return "table";
                                 case QDensity::Kind::Composite:
                                   return "composite";
                               }
                               return "callable";
                             })
      .def("__repr__", [](const Density& d) { return "<Density " + d.label + ">"; });

  m.def(
      "zoo",
      [](const std::string& name, const ParamMap& params) {
        NamedDistribution d = make_named(name, params);
        if (!d.q_density) throw DomainError(name + " needs q to define a q-density");
        std::string label = d.name;
        for (const auto& [k, v] : d.params) label += " " + k + "=" + v;
        return Density{d.q_density, label};
      },
      py::arg("name"), py::arg("params"));
  m.def("registry_names", &registry_names);
  m.def(
      "theta_table", [](const std::string& q, long j_max) { return wrap(theta_table(QParam(q), j_max), "theta q=" + q); },
      py::arg("q"), py::arg("j_max") = 60);
  m.def(
      "m2_pattern_table",
      [](const std::string& q, long i_max) { return wrap(m2_pattern_table(QParam(q), i_max), "m2-pattern q=" + q); },
      py::arg("q"), py::arg("i_max") = 80);
  m.def(
      "point_mass", [](const std::string& q) { return wrap(point_mass(QParam(q)), "point-mass q=" + q); },
      py::arg("q"));
  m.def(
      "read_table", [](const std::string& json) { return wrap(read_density_table(json), "table"); },
      py::arg("json"));
  m.def(
      "write_table", [](const Density& d) { return write_density_table(*d.ptr); }, py::arg("density"));

  m.def(
      "eval_lattice",
      [](const Density& d, long j, int digits) {
        const PrecisionContext ctx(digits);
        return text(eval_lattice(*d.ptr, j, ctx), ctx);
      },
      py::arg("density"), py::arg("j"), py::arg("digits") = 50);
  m.def(
      "mass",
      [](const Density& d, int digits) {
        const PrecisionContext ctx(digits);
        return text(improper_q_integral(*d.ptr, ctx), ctx);
      },
      py::arg("density"), py::arg("digits") = 50);
  m.def(
      "q_moment",
      [](const Density& d, long n, int digits) {
        const PrecisionContext ctx(digits);
        return to_json(q_moment(*d.ptr, n, ctx), ctx).dump();
      },
      py::arg("density"), py::arg("n"), py::arg("digits") = 50);
  m.def(
      "psi",
      [](const Density& d, long k, int digits) {
        const PrecisionContext ctx(digits);
        return text(psi_eval(*d.ptr, k, ctx), ctx);
      },
      py::arg("density"), py::arg("k"), py::arg("digits") = 50);

  m.def(
      "euler_product",
      [](const std::string& t, const std::string& q, int digits) {
        const PrecisionContext ctx(digits);
        return text(euler_product(ctx.parse(t), QParam(q), ctx), ctx);
      },
      py::arg("t"), py::arg("q"), py::arg("digits") = 50);
  m.def(
      "euler_series",
      [](const std::string& t, const std::string& q, int digits) {
        const PrecisionContext ctx(digits);
        return text(euler_series(ctx.parse(t), QParam(q), ctx), ctx);
      },
      py::arg("t"), py::arg("q"), py::arg("digits") = 50);

  m.def(
      "erlang_rule",
      [](const std::string& lambda, long r, const std::string& q) {
        return to_json(erlang_rule(Scalar::parse(lambda), r, QParam(q))).dump();
      },
      py::arg("lambda_"), py::arg("r"), py::arg("q"));
  m.def(
      "qexp_rule",
      [](const std::string& lambda, const std::string& q) {
        return to_json(qexp_rule(Scalar::parse(lambda), QParam(q))).dump();
      },
      py::arg("lambda_"), py::arg("q"));
  m.def(
      "condition_B",
      [](const Density& d, long J, int digits) { return to_json(check_condition_B(*d.ptr, J, PrecisionContext(digits))).dump(); },
      py::arg("density"), py::arg("J") = 40, py::arg("digits") = 50);
  m.def(
      "condition_C",
      [](const Density& d, long J, int digits) { return to_json(check_condition_C(*d.ptr, J, PrecisionContext(digits))).dump(); },
      py::arg("density"), py::arg("J") = 40, py::arg("digits") = 50);
  m.def(
      "thm3_mj",
      [](const Density& d, long step, long J, int digits) {
        return to_json(check_thm3_mj(*d.ptr, step, J, PrecisionContext(digits))).dump();
      },
      py::arg("density"), py::arg("m"), py::arg("J") = 40, py::arg("digits") = 50);
  m.def(
      "prop1",
      [](const Density& d, long n_max, int digits) { return to_json(classify_prop1(*d.ptr, n_max, PrecisionContext(digits))).dump(); },
      py::arg("density"), py::arg("n_max") = 20, py::arg("digits") = 50);
  m.def(
      "thm2",
      [](const Density& d, long n_max, long J, int digits) {
        return to_json(classify_thm2(*d.ptr, n_max, J, PrecisionContext(digits))).dump();
      },
      py::arg("density"), py::arg("n_max") = 20, py::arg("J") = 40, py::arg("digits") = 50);

  m.def(
      "required_digits", [](long step, long N, const std::string& q) { return required_digits(step, N, QParam(q)); },
      py::arg("m"), py::arg("N"), py::arg("q"));
  m.def(
      "witness",
      [](const Density& d, long step, long N, int digits, std::optional<std::string> alpha, long J) {
        const PrecisionContext ctx(digits);
        py::gil_scoped_release release;
        const Real a = alpha ? ctx.parse(*alpha) : alpha_max(*d.ptr, step, J, ctx) / 2;
        WitnessPair pair = build_witness(d.ptr, step, a, J, ctx);
        pair = verify_moment_equality(std::move(pair), N, ctx);
        return to_json(pair, ctx).dump();
      },
      py::arg("density"), py::arg("m") = 1, py::arg("N") = 8, py::arg("digits") = 120, py::arg("alpha") = py::none(),
      py::arg("J") = WitnessPair::kDefaultWindow);
}
