// Python entry points. Field elements cross the boundary as their integer
// indices; structured results cross as JSON text and are decoded by the
// package __init__.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "permtrace/constructions.hpp"
#include "permtrace/hermite.hpp"
#include "permtrace/report.hpp"
#include "permtrace/translators.hpp"

namespace py = pybind11;
using namespace permtrace;

namespace {

using FieldPtr = std::shared_ptr<FieldCtx>;

std::vector<std::uint32_t> indices(const std::vector<Elt>& v) {
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (Elt e : v) out.push_back(e.index);
  return out;
}

// Accepts either a polynomial string or a list of trace values in F_q.
FunctionTable table_from(const FieldCtx& ctx, const py::object& h) {
  if (py::isinstance<py::str>(h)) return trace_table(ctx, parse_poly(ctx, h.cast<std::string>()));
  std::vector<Elt> values;
  for (auto v : h.cast<std::vector<std::uint32_t>>()) values.push_back(ctx.elem(v));
  return make_subfield_table(ctx, std::move(values));
}

FieldCtx quadratic_field(std::uint32_t q) {
  const auto pk = prime_power(q);
  if (!pk) throw Error(ErrorCode::BadParameters, std::to_string(q) + " is not a prime power");
  return FieldCtx::build(pk->first, pk->second, 2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-field toolkit for P_H = {gamma : x + gamma Tr(H(x)) permutes F_{q^n}}";

  // The message starts with the error code name, e.g. "CapExceeded: ...".
  py::register_exception<Error>(m, "PermtraceError", PyExc_ValueError);

  py::class_<FieldCtx, FieldPtr>(m, "Field")
      .def(py::init([](std::uint32_t p, std::uint32_t k, std::uint32_t n, std::optional<std::uint64_t> cap) {
             return std::make_shared<FieldCtx>(FieldCtx::build(p, k, n, cap.value_or(configured_field_cap())));
           }),
           py::arg("p"), py::arg("k") = 1, py::arg("n") = 2, py::arg("cap") = py::none())
      .def_property_readonly("p", &FieldCtx::p)
      .def_property_readonly("k", &FieldCtx::k)
      .def_property_readonly("n", &FieldCtx::n)
      .def_property_readonly("q", &FieldCtx::q)
      .def_property_readonly("size", &FieldCtx::size)
      .def_property_readonly("modulus",
                             [](const FieldCtx& c) { return std::vector<std::uint32_t>(c.modulus().begin(), c.modulus().end()); })
      .def_property_readonly("subfield", [](const FieldCtx& c) {
        return indices({c.subfield_elems().begin(), c.subfield_elems().end()});
      })
      .def("add", [](const FieldCtx& c, std::uint32_t a, std::uint32_t b) { return c.add(c.elem(a), c.elem(b)).index; })
      .def("sub", [](const FieldCtx& c, std::uint32_t a, std::uint32_t b) { return c.sub(c.elem(a), c.elem(b)).index; })
      .def("mul", [](const FieldCtx& c, std::uint32_t a, std::uint32_t b) { return c.mul(c.elem(a), c.elem(b)).index; })
      .def("inv", [](const FieldCtx& c, std::uint32_t a) { return c.inv(c.elem(a)).index; })
      .def("pow", [](const FieldCtx& c, std::uint32_t a, std::uint64_t e) { return c.pow(c.elem(a), e).index; })
      .def("trace", [](const FieldCtx& c, std::uint32_t a) { return c.rel_trace(c.elem(a)).index; })
      .def("digits", [](const FieldCtx& c, std::uint32_t a) { return c.digits(c.elem(a)); })
      .def("__repr__", [](const FieldCtx& c) {
        return "Field(p=" + std::to_string(c.p()) + ", k=" + std::to_string(c.k()) + ", n=" + std::to_string(c.n()) + ")";
      });

  m.def("trace_table", [](const FieldCtx& c, const std::string& h) { return indices(trace_table(c, parse_poly(c, h)).values); },
        py::arg("field"), py::arg("h"));
  m.def("ph_bruteforce", [](const FieldCtx& c, const py::object& h) { return indices(ph_bruteforce(c, table_from(c, h))); },
        py::arg("field"), py::arg("h"));
  m.def(
      "ph_directions",
      [](const FieldCtx& c, const py::object& h) {
        return indices(ph_directions(c, preimage_partition(c, table_from(c, h))));
      },
      py::arg("field"), py::arg("h"));
  m.def(
      "direction_set_size", [](const FieldCtx& c, const py::object& h, bool force) {
        return direction_set_size(c, table_from(c, h), force);
      },
      py::arg("field"), py::arg("h"), py::arg("force") = false);
  m.def(
      "_audit",
      [](const FieldCtx& c, const py::object& h) {
        const auto label = py::isinstance<py::str>(h) ? h.cast<std::string>() : std::string("table");
        return ph_report_json(c, label, cardinality_audit(c, table_from(c, h))).dump();
      },
      py::arg("field"), py::arg("h"));
  m.def(
      "_translators", [](const FieldCtx& c, const py::object& h) {
        return translator_space_json(translator_space(c, table_from(c, h))).dump();
      },
      py::arg("field"), py::arg("h"));

  m.def(
      "hermite",
      [](std::uint32_t q, const std::string& f1, const std::string& f2) {
        const auto ctx = quadratic_field(q);
        const auto v = hermite_scan(ctx, parse_grid(ctx, f1), parse_grid(ctx, f2));
        py::dict out;
        out["orthogonal"] = v.orthogonal;
        out["condition_i"] = v.condition_i;
        out["witness"] = v.witness ? py::object(py::make_tuple(v.witness->first, v.witness->second)) : py::none();
        return out;
      },
      py::arg("q"), py::arg("f1"), py::arg("f2"));
  m.def(
      "gamma_map_grids",
      [](const std::string& family, std::uint32_t q, std::uint32_t gamma) {
        const auto ctx = quadratic_field(q);
        const auto tt = trace_table(ctx, find_family(family).h_builder(ctx, 1));
        const auto [f1, f2] = decompose(ctx, gamma_map(ctx, tt, ctx.elem(gamma)));
        return py::make_tuple(format_grid(f1), format_grid(f2));
      },
      py::arg("family"), py::arg("q"), py::arg("gamma"));

  m.def("families", [] {
    std::vector<std::string> names;
    for (const auto& f : family_registry()) names.push_back(f.name);
    return names;
  });
  m.def(
      "_verify_family",
      [](const std::string& name, std::uint32_t q, std::uint32_t n, std::uint32_t i) {
        return verify_family(find_family(name), q, n, i).dump();
      },
      py::arg("name"), py::arg("q"), py::arg("n") = 2, py::arg("i") = 1);
  m.def("verify_suites", &verify_suite_names);
  m.def(
      "_verify",
      [](const std::string& suite, std::optional<std::uint64_t> seed) {
        VerifyResult r;
        {
          py::gil_scoped_release release;
          r = run_verify(suite, seed.value_or(configured_seed()));
        }
        return json{{"suite", r.suite}, {"checks", r.checks}, {"failures", r.failures}, {"lines", r.lines}}.dump();
      },
      py::arg("suite"), py::arg("seed") = py::none());

  m.def(
      "search",
      [](std::uint32_t p, std::uint32_t k, std::uint32_t n, std::uint64_t kmin, std::uint64_t kmax, bool nonzero,
         bool force, unsigned workers) {
        SearchJob job;
        job.p = p;
        job.k = k;
        job.n = n;
        job.kmin = kmin;
        job.kmax = kmax;
        job.gamma_scope = nonzero ? GammaScope::Nonzero : GammaScope::All;
        job.force = force;
        std::vector<SearchRecord> records;
        {
          py::gil_scoped_release release;
          records = workers > 1 ? run_search_parallel(job, workers) : run_search(job);
        }
        std::vector<std::pair<std::uint64_t, std::vector<std::uint32_t>>> out;
        for (const auto& r : records) out.emplace_back(r.k, indices(r.ph));
        return out;
      },
      py::arg("p"), py::arg("k") = 1, py::arg("n") = 2, py::arg("kmin") = 1, py::arg("kmax") = 0,
      py::arg("nonzero") = false, py::arg("force") = false, py::arg("workers") = 1);
}
