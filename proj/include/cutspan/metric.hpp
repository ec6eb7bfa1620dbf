#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cutspan/errors.hpp"
#include "cutspan/rational.hpp"

namespace cutspan {

/// A finite metric on labelled points with exact rational distances.
///
/// Instances are only produced by validate_metric (or by restricting or
/// permuting an existing metric), so every Metric satisfies symmetry,
/// positivity off the diagonal and the triangle inequality.
class Metric {
public:
    int size() const { return n_; }
    const Rational& operator()(int i, int j) const { return dist_[static_cast<std::size_t>(i * n_ + j)]; }
    std::span<const Rational> row(int i) const {
        return {dist_.data() + static_cast<std::ptrdiff_t>(i) * n_, static_cast<std::size_t>(n_)};
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    /// Throws UnknownPoint.
    int index_of(std::string_view label) const;

    /// Position of label(i) in the lexicographic order of all labels.
    int label_rank(int i) const { return rank_[static_cast<std::size_t>(i)]; }

    /// Restriction to the given points, in the given order.
    Metric subset(std::span<const int> points) const;
    /// Restriction to the first k points.
    Metric prefix(int k) const;

    std::vector<std::vector<Rational>> table() const;

    friend bool operator==(const Metric&, const Metric&) = default;

private:
    friend Metric validate_metric(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& table);
    Metric(std::vector<std::string> labels, std::vector<Rational> dist);

    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<Rational> dist_;
    std::vector<int> rank_;
};

/// Checks every metric axiom and throws MetricError on the first failure.
/// Distinct points at distance zero are rejected rather than merged.
Metric validate_metric(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& table);

}  // namespace cutspan
