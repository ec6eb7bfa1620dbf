#include "cutspan/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cutspan {

InputFormat parse_format(std::string_view name) {
    if (name == "csv") return InputFormat::Csv;
    if (name == "phylip") return InputFormat::Phylip;
    throw std::invalid_argument("unknown input format '" + std::string(name) + "' (expected csv or phylip)");
}

namespace {

struct Line {
    int number;
    std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    while (!text.empty()) {
        ++number;
        auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
        if (!blank) out.push_back({number, line});
    }
    return out;
}

struct Cell {
    int column;  // 1-based
    std::string_view text;
};

std::string_view trim(std::string_view s, int* column = nullptr) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        if (column) ++*column;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<Cell> csv_cells(std::string_view line) {
    std::vector<Cell> out;
    int column = 1;
    for (;;) {
        const auto comma = line.find(',');
        int col = column;
        const auto cell = trim(line.substr(0, comma), &col);
        out.push_back({col, cell});
        if (comma == std::string_view::npos) break;
        column += static_cast<int>(comma) + 1;
        line.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<Cell> whitespace_cells(std::string_view line) {
    std::vector<Cell> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({static_cast<int>(start) + 1, line.substr(start, i - start)});
    }
    return out;
}

Rational value_at(const Line& line, const Cell& cell) {
    try {
        return Rational::parse(cell.text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, cell.column, e.what());
    }
}

Metric parse_csv(const std::vector<Line>& lines) {
    if (lines.empty()) throw ParseError(1, 1, "empty input");
    auto header = csv_cells(lines[0].text);
    if (header.size() > 1 && header[0].text.empty()) header.erase(header.begin());
    std::vector<std::string> labels;
    for (const auto& c : header) {
        if (c.text.empty()) throw ParseError(lines[0].number, c.column, "empty label in header");
        labels.emplace_back(c.text);
    }
    const std::size_t n = labels.size();
    std::vector<std::vector<Rational>> table;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const Line& line = lines[r];
        if (r > n) throw ParseError(line.number, 1, "more rows than the " + std::to_string(n) + " header labels");
        const auto cells = csv_cells(line.text);
        if (cells.size() != n + 1) {
            const int column = cells.size() > n + 1 ? cells[n + 1].column : static_cast<int>(line.text.size()) + 1;
            throw ParseError(line.number, column,
                             "row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(n + 1));
        }
        if (cells[0].text != labels[r - 1]) {
            throw ParseError(line.number, cells[0].column,
                             "row label '" + std::string(cells[0].text) + "' does not match header label '" +
                                 labels[r - 1] + "'");
        }
        std::vector<Rational> row;
        for (std::size_t c = 1; c <= n; ++c) row.push_back(value_at(line, cells[c]));
        table.push_back(std::move(row));
    }
    if (table.size() != n) {
        const int next = lines.back().number + 1;
        throw ParseError(next, 1, "expected " + std::to_string(n) + " rows, found " + std::to_string(table.size()));
    }
    return validate_metric(std::move(labels), table);
}

Metric parse_phylip(const std::vector<Line>& lines) {
    if (lines.empty()) throw ParseError(1, 1, "empty input");
    const auto first = whitespace_cells(lines[0].text);
    if (first.size() != 1 || !std::all_of(first[0].text.begin(), first[0].text.end(),
                                          [](unsigned char c) { return std::isdigit(c); })) {
        throw ParseError(lines[0].number, first.empty() ? 1 : first[0].column, "first line must be the point count");
    }
    const std::size_t n = std::stoul(std::string(first[0].text));
    if (n == 0) throw ParseError(lines[0].number, first[0].column, "point count must be positive");
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> table;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const Line& line = lines[r];
        if (r > n) throw ParseError(line.number, 1, "more rows than the declared " + std::to_string(n));
        const auto cells = whitespace_cells(line.text);
        if (cells.size() != n + 1) {
            const int column = cells.size() > n + 1 ? cells[n + 1].column : static_cast<int>(line.text.size()) + 1;
            throw ParseError(line.number, column,
                             "row has " + std::to_string(cells.size()) + " fields, expected " + std::to_string(n + 1));
        }
        labels.emplace_back(cells[0].text);
        std::vector<Rational> row;
        for (std::size_t c = 1; c <= n; ++c) row.push_back(value_at(line, cells[c]));
        table.push_back(std::move(row));
    }
    if (table.size() != n) {
        throw ParseError(lines.back().number + 1, 1,
                         "expected " + std::to_string(n) + " rows, found " + std::to_string(table.size()));
    }
    return validate_metric(std::move(labels), table);
}

}  // namespace

Metric parse_matrix(std::string_view text, InputFormat format) {
    const auto lines = content_lines(text);
    return format == InputFormat::Csv ? parse_csv(lines) : parse_phylip(lines);
}

std::string format_matrix(const Metric& d, InputFormat format) {
    std::ostringstream os;
    const int n = d.size();
    for (const auto& l : d.labels()) {
        const bool bad = format == InputFormat::Csv
                             ? l.find_first_of(",\r\n") != std::string::npos || trim(l) != l
                             : std::any_of(l.begin(), l.end(), [](unsigned char c) { return std::isspace(c); });
        if (bad) throw std::invalid_argument("label '" + l + "' cannot be written in this format");
    }
    if (format == InputFormat::Csv) {
        for (const auto& l : d.labels()) os << ',' << l;
        os << '\n';
        for (int i = 0; i < n; ++i) {
            os << d.label(i);
            for (int j = 0; j < n; ++j) os << ',' << d(i, j).str();
            os << '\n';
        }
    } else {
        os << n << '\n';
        for (int i = 0; i < n; ++i) {
            os << d.label(i);
            for (int j = 0; j < n; ++j) os << ' ' << d(i, j).str();
            os << '\n';
        }
    }
    return os.str();
}

namespace {

void put(Json& j, const std::string& key, const Rational& r) {
    j[key] = r.str();
    j[key + "_approx"] = r.approx();
}

void put(Json& j, const std::string& key, const std::vector<Rational>& values) {
    Json exact = Json::array(), approx = Json::array();
    for (const auto& r : values) {
        exact.push_back(r.str());
        approx.push_back(r.approx());
    }
    j[key] = std::move(exact);
    j[key + "_approx"] = std::move(approx);
}

void put(Json& j, const std::string& key, const std::vector<std::vector<Rational>>& table) {
    Json exact = Json::array(), approx = Json::array();
    for (const auto& row : table) {
        Json e = Json::array(), a = Json::array();
        for (const auto& r : row) {
            e.push_back(r.str());
            a.push_back(r.approx());
        }
        exact.push_back(std::move(e));
        approx.push_back(std::move(a));
    }
    j[key] = std::move(exact);
    j[key + "_approx"] = std::move(approx);
}

Json names(const Metric& d, const std::vector<int>& points) {
    Json out = Json::array();
    for (int p : points) out.push_back(d.label(p));
    return out;
}

}  // namespace

Json to_json(const Metric& d) {
    Json j;
    j["labels"] = d.labels();
    put(j, "distances", d.table());
    return j;
}

Json splits_to_json(const Metric& d, const std::vector<BlockSplitRecord>& splits) {
    Json out = Json::array();
    for (const auto& r : splits) {
        Json s;
        s["split"] = r.split.str(d);
        s["side_a"] = names(d, r.split.side_a());
        s["side_b"] = names(d, r.split.side_b());
        s["a_s"] = d.label(r.a_s);
        s["b_s"] = d.label(r.b_s);
        put(s, "va", r.va);
        put(s, "vb", r.vb);
        put(s, "alpha", r.alpha);
        out.push_back(std::move(s));
    }
    return out;
}

Json to_json(const CutSystem& cs) {
    const Metric& d = cs.metric;
    // Kuratowski maps in point order, then the rest in map order.
    std::vector<const CutpointInfo*> order;
    for (const auto& c : cs.cutpoints) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const CutpointInfo* x, const CutpointInfo* y) {
        const int kx = x->kuratowski_of < 0 ? INT32_MAX : x->kuratowski_of;
        const int ky = y->kuratowski_of < 0 ? INT32_MAX : y->kuratowski_of;
        if (kx != ky) return kx < ky;
        return x->map < y->map;
    });
    Json cuts = Json::array();
    for (const auto* c : order) {
        Json j;
        put(j, "values", c->map.values());
        j["classification"] = to_string(c->classification);
        j["kuratowski_of"] = c->kuratowski_of >= 0 ? Json(d.label(c->kuratowski_of)) : Json(nullptr);
        Json comps = Json::array();
        for (const auto& comp : c->components) comps.push_back(names(d, comp));
        j["components"] = std::move(comps);
        j["clique_flags"] = c->clique_flags;
        cuts.push_back(std::move(j));
    }
    Json j;
    j["labels"] = d.labels();
    j["counts"] = {{"points", d.size()}, {"block_splits", cs.block_splits.size()}, {"cutpoints", cs.cutpoints.size()}};
    j["block_splits"] = splits_to_json(d, cs.block_splits);
    j["cutpoints"] = std::move(cuts);
    return j;
}

Json to_json(const RealizationGraph& g, const BlockStructure& blocks) {
    Json vertices = Json::array();
    for (int v = 0; v < g.vertex_count(); ++v) {
        Json j;
        j["name"] = g.names[v];
        j["labelled"] = g.point_of[v] >= 0;
        j["cutpoint"] = static_cast<bool>(g.is_cutpoint[v]);
        put(j, "map", g.vertices[v].values());
        vertices.push_back(std::move(j));
    }
    std::vector<bool> bridge(g.edges.size(), false);
    for (const auto& b : blocks.blocks) {
        if (b.size() == 2) bridge[static_cast<std::size_t>(g.find_edge(b[0], b[1]))] = true;
    }
    Json edges = Json::array();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        Json j;
        j["u"] = g.names[g.edges[e].u];
        j["v"] = g.names[g.edges[e].v];
        put(j, "weight", g.edges[e].weight);
        j["bridge"] = static_cast<bool>(bridge[e]);
        edges.push_back(std::move(j));
    }
    Json block_list = Json::array();
    for (const auto& b : blocks.blocks) {
        Json names_of = Json::array();
        for (int v : b) names_of.push_back(g.names[v]);
        block_list.push_back(std::move(names_of));
    }
    Json cut = Json::array();
    for (int v : blocks.cut_vertices) cut.push_back(g.names[v]);
    Json j;
    j["vertices"] = std::move(vertices);
    j["edges"] = std::move(edges);
    j["blocks"] = std::move(block_list);
    j["cut_vertices"] = std::move(cut);
    return j;
}

Json to_json(const Metric& d, const BlockDecomposition& dec) {
    Json blocks = Json::array();
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        Json j;
        Json names_of = Json::array();
        for (int v : dec.blocks[b]) names_of.push_back(dec.graph.names[v]);
        j["vertices"] = std::move(names_of);
        j["bridge"] = static_cast<bool>(dec.bridge[b]);
        put(j, "metric", dec.metrics[b]);
        blocks.push_back(std::move(j));
    }
    Json j;
    j["labels"] = d.labels();
    j["blocks"] = std::move(blocks);
    j["realization"] = to_json(dec.graph, BlockStructure{dec.blocks, dec.cut_vertices});
    return j;
}

Json to_json(const VerificationReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        if (!c.passed) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    Json j;
    j["overall"] = report.overall;
    j["checks"] = std::move(checks);
    j["skipped"] = report.skipped;
    return j;
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const RealizationGraph& g) {
    std::ostringstream os;
    os << "graph realization {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        os << "  " << quoted(g.names[v])
           << (g.point_of[v] >= 0 ? " [shape=box];\n" : " [shape=circle, style=dashed];\n");
    }
    for (const auto& e : g.edges) {
        os << "  " << quoted(g.names[e.u]) << " -- " << quoted(g.names[e.v]) << " [label=" << quoted(e.weight.str())
           << "];\n";
    }
    os << "}\n";
    return os.str();
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs at least two points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(std::max(y[i], 1e-9)));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace cutspan
