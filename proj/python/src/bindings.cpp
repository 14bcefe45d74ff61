#include "microwrap/errors.hpp"
#include "microwrap/report.hpp"
#include "microwrap/scenario.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;
using namespace microwrap;

namespace {

Query::Op op_named(const std::string& name) {
    for (auto op : {Query::Op::homw, Query::Op::comparison, Query::Op::wrap_plus, Query::Op::wrap_minus,
                    Query::Op::microstalk, Query::Op::ss, Query::Op::verify_equivalence,
                    Query::Op::corepresentability, Query::Op::disk_annihilation})
        if (to_string(op) == name)
            return op;
    throw ScenarioError("unknown query op '" + name + "'");
}

// Runs a single query against the scenario's scene; returns the result entry as JSON.
std::string run_query(const Scenario& s, const std::string& op, const std::string& source,
                      const std::string& target, const std::string& object, const std::optional<std::string>& at,
                      const std::string& codirection, bool trace) {
    Query q;
    q.op = op_named(op);
    q.source = source;
    q.target = target;
    q.object = object;
    if (at) {
        q.at = parse_rational(*at);
        q.codirection = parse_codirection(codirection);
    }
    Scenario one = s;
    one.queries = {q};
    Report r = run_scenario(one, {trace, false});
    return r["results"][0].dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Wrapped sheaf categories on one-dimensional spaces";

    auto base = py::register_exception<Error>(m, "MicrowrapError", PyExc_RuntimeError);
    py::register_exception<ScenarioError>(m, "ScenarioError", base.ptr());
    py::register_exception<WrapError>(m, "WrapError", base.ptr());

    py::class_<Scenario>(m, "_Scenario")
        .def("to_json", [](const Scenario& s) { return serialize_scenario(s); })
        .def("object_names",
             [](const Scenario& s) {
                 std::vector<std::string> out;
                 for (const auto& [name, sheaf] : s.catalog)
                     out.push_back(name);
                 return out;
             })
        .def("query_count", [](const Scenario& s) { return s.queries.size(); })
        .def("run",
             [](const Scenario& s, bool trace, bool check) {
                 return render_json(run_scenario(s, {trace, check}));
             },
             py::arg("trace") = false, py::arg("check") = false)
        .def("run_query", &run_query, py::arg("op"), py::arg("source") = "", py::arg("target") = "",
             py::arg("object") = "", py::arg("at") = std::nullopt, py::arg("codirection") = "+",
             py::arg("trace") = false)
        .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

    m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); });
    m.def("load_scenario", &load_scenario);
    m.def("parse_interval", [](const std::string& text) { return parse_interval(text).to_string(); });
    m.def("conventions", &convention_ledger);
    m.def("conventions_hash", &convention_ledger_hash);
    m.def("engine_version", &engine_version);
}
