#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cutspan/metric.hpp"
#include "cutspan/rational.hpp"

namespace cutspan {

/// A map f from the point set of a metric to the rationals, stored by point
/// index.
class PointMap {
public:
    PointMap() = default;
    explicit PointMap(std::vector<Rational> values) : values_(std::move(values)) {}
    PointMap(std::initializer_list<Rational> values) : values_(values) {}

    int size() const { return static_cast<int>(values_.size()); }
    const Rational& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    Rational& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<Rational>& values() const { return values_; }

    /// Copy with one more coordinate appended.
    PointMap extended(Rational value) const;

    friend bool operator==(const PointMap&, const PointMap&) = default;
    friend auto operator<=>(const PointMap&, const PointMap&) = default;

    std::size_t hash() const;
    std::string str() const;

private:
    std::vector<Rational> values_;
};

struct PointMapHash {
    std::size_t operator()(const PointMap& f) const noexcept { return f.hash(); }
};

/// Sup-norm distance between two maps on the same point set.
Rational sup_distance(const PointMap& f, const PointMap& g);

/// The graph on supp(f) whose edges are the pairs with f(x) + f(y) > d(x,y).
struct SupportGraph {
    std::vector<int> vertices;                  ///< supp(f), ascending
    std::vector<std::pair<int, int>> edges;     ///< (x, y) with x < y
    std::vector<std::vector<int>> components;   ///< ascending, ordered by first member
    std::vector<bool> clique_flags;             ///< one per component

    bool disconnected() const { return components.size() >= 2; }
    /// Every component is a clique and there are exactly two of them.
    bool two_cliques() const;
};

// The predicates below accept maps that cover only the first f.size() points
// of the metric and then work on that restriction. They throw
// std::invalid_argument if f has more values than the metric has points.

PointMap kuratowski_map(const Metric& d, int x);
/// Throws UnknownPoint.
PointMap kuratowski_map(const Metric& d, std::string_view label);

std::vector<int> support(const PointMap& f);

SupportGraph gamma_graph(const Metric& d, const PointMap& f);

/// f(x) + f(y) >= d(x,y) for every pair, the diagonal x = y included.
bool is_in_polytope(const Metric& d, const PointMap& f);

/// f(x) = max_y (d(x,y) - f(y)) for every x, exactly.
bool is_in_tight_span(const Metric& d, const PointMap& f);

/// First coordinate at which the tight-span equation fails, or -1.
int tight_span_violation(const Metric& d, const PointMap& f);

/// (1/2) min over y, y' in Y (repeats allowed) of f(y) + f(y') - d(y,y').
/// Throws EmptySubset.
Rational virtual_distance(const Metric& d, const PointMap& f, std::span<const int> subset);

enum class CutClass {
    InteriorCutpoint,
    Kuratowski,
    TwoCliquesFullSupport,
    NotInTightSpan,
    Connected,
};

const char* to_string(CutClass c);

/// Membership of f in Cut*(D) = cut*(D) plus the Kuratowski maps. A
/// Kuratowski map that is also a cutpoint reports InteriorCutpoint.
CutClass classify_cutstar(const Metric& d, const PointMap& f);

/// Classification from an already computed support graph, for maps known
/// to lie in the tight span. `kuratowski` tells whether f is some k_x.
CutClass classify_from_graph(const SupportGraph& g, int n, bool kuratowski);

/// Index x with f == k_x, or -1.
int kuratowski_point(const Metric& d, const PointMap& f);

}  // namespace cutspan

template <>
struct std::hash<cutspan::PointMap> {
    std::size_t operator()(const cutspan::PointMap& f) const noexcept { return f.hash(); }
};
