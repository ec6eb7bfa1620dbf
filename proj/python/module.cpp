#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cutspan/io.hpp"

namespace py = pybind11;
using namespace cutspan;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python side turns
// them into fractions.Fraction.
Metric make_metric(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<Rational>> table;
    for (const auto& row : rows) {
        auto& out = table.emplace_back();
        for (const auto& v : row) out.push_back(Rational::parse(v));
    }
    return validate_metric(std::move(labels), table);
}

std::vector<std::vector<std::string>> as_strings(const Metric& d) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : d.table()) {
        auto& r = out.emplace_back();
        for (const auto& v : row) r.push_back(v.str());
    }
    return out;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_cutspan, m) {
    m.doc() = "Exact block splits, cutpoints and block realizations of finite metrics";

    auto base = py::register_exception<Error>(m, "CutspanError", PyExc_ValueError);
    py::register_exception<MetricError>(m, "MetricError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<RealizationCheckFailed>(m, "RealizationCheckFailed", base.ptr());
    py::register_exception<UnknownPoint>(m, "UnknownPoint", base.ptr());

    py::class_<Metric>(m, "Metric")
        .def(py::init(&make_metric), py::arg("labels"), py::arg("rows"))
        .def_property_readonly("labels", &Metric::labels)
        .def("__len__", &Metric::size)
        .def("index_of", [](const Metric& d, const std::string& label) { return d.index_of(label); })
        .def("distance", [](const Metric& d, int i, int j) { return d(i, j).str(); })
        .def("table", &as_strings)
        .def("subset", [](const Metric& d, const std::vector<int>& points) { return d.subset(points); })
        .def("reorder", &reorder)
        .def("format", [](const Metric& d, const std::string& fmt) { return format_matrix(d, parse_format(fmt)); })
        .def(py::self == py::self);

    m.def("parse_matrix", [](const std::string& text, const std::string& fmt) { return parse_matrix(text, parse_format(fmt)); },
          py::arg("text"), py::arg("format") = "csv");
    m.def("isolation_index", [](const Metric& d, const std::vector<std::string>& side) {
        std::vector<int> points;
        for (const auto& s : side) points.push_back(d.index_of(s));
        return isolation_index(d, Split::from_side(d.size(), points)).str();
    });
    m.def("cut_points", [](const Metric& d) { return dump(to_json(compute_cut_points(d))); });
    m.def("realize", [](const Metric& d) {
        const auto g = build_block_realization(d, compute_cut_points(d));
        return dump(to_json(g, blocks_and_cut_vertices(g)));
    });
    m.def("realize_dot", [](const Metric& d) { return to_dot(build_block_realization(d, compute_cut_points(d))); });
    m.def("decompose", [](const Metric& d) { return dump(to_json(d, decompose(d))); });
    m.def("verify", [](const Metric& d, int cap) {
        if (d.size() > cap) throw CapExceeded(d.size(), cap);
        return dump(to_json(verify_cut_system(d, compute_cut_points(d, {true}), {cap, true})));
    }, py::arg("metric"), py::arg("cap") = 10);
    m.def("reference_cut_points", [](const Metric& d, int cap) { return dump(to_json(reference_cut_points(d, cap))); },
          py::arg("metric"), py::arg("cap") = kDefaultOracleCap);
    m.def("generate_block_instance", &generate_block_instance, py::arg("n"), py::arg("seed"));
    m.def("random_metric", &random_metric, py::arg("n"), py::arg("seed"));
}
