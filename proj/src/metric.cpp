#include "cutspan/metric.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cutspan {

const char* to_string(MetricErrorKind kind) {
    switch (kind) {
        case MetricErrorKind::MalformedTable: return "MalformedTable";
        case MetricErrorKind::DuplicateLabel: return "DuplicateLabel";
        case MetricErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
        case MetricErrorKind::NegativeEntry: return "NegativeEntry";
        case MetricErrorKind::Asymmetry: return "Asymmetry";
        case MetricErrorKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
        case MetricErrorKind::TriangleViolation: return "TriangleViolation";
    }
    return "?";
}

Metric::Metric(std::vector<std::string> labels, std::vector<Rational> dist)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)), dist_(std::move(dist)) {
    std::vector<int> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return labels_[a] < labels_[b]; });
    rank_.assign(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r) rank_[static_cast<std::size_t>(order[r])] = r;
}

int Metric::index_of(std::string_view label) const {
    for (int i = 0; i < n_; ++i) {
        if (labels_[static_cast<std::size_t>(i)] == label) return i;
    }
    throw UnknownPoint("unknown point '" + std::string(label) + "'");
}

Metric Metric::subset(std::span<const int> points) const {
    const int k = static_cast<int>(points.size());
    std::vector<std::string> labels;
    labels.reserve(points.size());
    std::vector<Rational> dist;
    dist.reserve(static_cast<std::size_t>(k * k));
    for (int p : points) {
        if (p < 0 || p >= n_) throw UnknownPoint("point index " + std::to_string(p) + " out of range");
        labels.push_back(labels_[static_cast<std::size_t>(p)]);
    }
    if (std::set<int>(points.begin(), points.end()).size() != points.size()) {
        throw MetricError(MetricErrorKind::DuplicateLabel, {}, "subset repeats a point");
    }
    for (int p : points) {
        for (int q : points) dist.push_back((*this)(p, q));
    }
    return Metric(std::move(labels), std::move(dist));
}

Metric Metric::prefix(int k) const {
    std::vector<int> points(static_cast<std::size_t>(k));
    std::iota(points.begin(), points.end(), 0);
    return subset(points);
}

std::vector<std::vector<Rational>> Metric::table() const {
    std::vector<std::vector<Rational>> t(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        auto r = row(i);
        t[static_cast<std::size_t>(i)].assign(r.begin(), r.end());
    }
    return t;
}

Metric validate_metric(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& table) {
    const int n = static_cast<int>(labels.size());
    if (n == 0) throw MetricError(MetricErrorKind::MalformedTable, {}, "metric needs at least one point");
    if (static_cast<int>(table.size()) != n) {
        throw MetricError(MetricErrorKind::MalformedTable, {},
                          "table has " + std::to_string(table.size()) + " rows for " + std::to_string(n) + " labels");
    }
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[i].size()) != n) {
            throw MetricError(MetricErrorKind::MalformedTable, {i},
                              "row " + labels[i] + " has " + std::to_string(table[i].size()) + " entries");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (labels[i] == labels[j]) {
                throw MetricError(MetricErrorKind::DuplicateLabel, {i, j}, "duplicate label '" + labels[i] + "'");
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!table[i][i].is_zero()) {
            throw MetricError(MetricErrorKind::NonzeroDiagonal, {i},
                              "d(" + labels[i] + "," + labels[i] + ") = " + table[i][i].str());
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (table[i][j].sign() < 0) {
                throw MetricError(MetricErrorKind::NegativeEntry, {i, j},
                                  "d(" + labels[i] + "," + labels[j] + ") = " + table[i][j].str() + " is negative");
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (table[i][j] != table[j][i]) {
                throw MetricError(MetricErrorKind::Asymmetry, {i, j},
                                  "d(" + labels[i] + "," + labels[j] + ") = " + table[i][j].str() + " but d(" +
                                      labels[j] + "," + labels[i] + ") = " + table[j][i].str());
            }
            if (table[i][j].is_zero()) {
                throw MetricError(MetricErrorKind::ZeroOffDiagonal, {i, j},
                                  "distinct points " + labels[i] + " and " + labels[j] + " are at distance 0");
            }
        }
    }
    for (int x = 0; x < n; ++x) {
        for (int z = x + 1; z < n; ++z) {
            for (int y = 0; y < n; ++y) {
                if (table[x][z] > table[x][y] + table[y][z]) {
                    throw MetricError(MetricErrorKind::TriangleViolation, {x, y, z},
                                      "d(" + labels[x] + "," + labels[z] + ") exceeds the path through " + labels[y]);
                }
            }
        }
    }

    std::vector<Rational> dist;
    dist.reserve(static_cast<std::size_t>(n * n));
    for (const auto& r : table) dist.insert(dist.end(), r.begin(), r.end());
    return Metric(std::move(labels), std::move(dist));
}

}  // namespace cutspan
