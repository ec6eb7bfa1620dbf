#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "cutspan/metric.hpp"
#include "cutspan/tight_span.hpp"

namespace fixtures {

using cutspan::Metric;
using cutspan::PointMap;
using cutspan::Rational;

inline Rational q(const char* text) { return Rational::parse(text); }

inline Metric from_rows(std::vector<std::string> labels, std::vector<std::vector<Rational>> rows) {
    return cutspan::validate_metric(std::move(labels), rows);
}

inline Metric from_ints(std::vector<std::string> labels, const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<Rational>> t;
    for (const auto& r : rows) t.emplace_back(r.begin(), r.end());
    return cutspan::validate_metric(std::move(labels), t);
}

// The five-point example with four block splits and three interior cutpoints.
inline Metric five_point() {
    return from_ints({"a", "b", "c", "d", "e"}, {{0, 3, 6, 9, 5},
                                                 {3, 0, 5, 8, 4},
                                                 {6, 5, 0, 3, 5},
                                                 {9, 8, 3, 0, 4},
                                                 {5, 4, 5, 4, 0}});
}

// Same points with c moved to the end: its prefix of length 4 is five_point without c.
inline Metric five_point_c_last() {
    const Metric d = five_point();
    const int order[] = {0, 1, 3, 4, 2};
    return d.subset(order);
}

inline Metric five_point_without_c() {
    const Metric d = five_point();
    const int keep[] = {0, 1, 3, 4};
    return d.subset(keep);
}

inline Metric cycle4() {
    return from_ints({"a", "b", "c", "d"}, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

inline Metric two_point(const Rational& t) {
    return from_rows({"x", "y"}, {{Rational(0), t}, {t, Rational(0)}});
}

// Three leaves around a centre, all spokes of length 1.
inline Metric star3() { return from_ints({"a", "b", "c"}, {{0, 2, 2}, {2, 0, 2}, {2, 2, 0}}); }

inline PointMap map(std::initializer_list<int> values) {
    std::vector<Rational> v(values.begin(), values.end());
    return PointMap(std::move(v));
}

inline PointMap map(std::initializer_list<const char*> values) {
    std::vector<Rational> v;
    for (const char* s : values) v.push_back(q(s));
    return PointMap(std::move(v));
}

}  // namespace fixtures
