#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cutspan/metric.hpp"
#include "cutspan/split.hpp"
#include "cutspan/tight_span.hpp"

namespace cutspan {

/// One element of Cut*(D) with the structure of its support graph.
struct CutpointInfo {
    PointMap map;
    CutClass classification = CutClass::InteriorCutpoint;  ///< InteriorCutpoint or Kuratowski
    int kuratowski_of = -1;                                 ///< x when map == k_x
    std::vector<std::vector<int>> components;
    std::vector<bool> clique_flags;
};

/// Result of compute_cut_points: Cut*(D), the block splits and, through the
/// records, their reference 4-tuples.
struct CutSystem {
    Metric metric;
    std::vector<CutpointInfo> cutpoints;
    std::vector<BlockSplitRecord> block_splits;

    /// Index of `f` among the cutpoints, or -1.
    int find(const PointMap& f) const;
};

struct EngineOptions {
    /// Recompute every incrementally derived support graph and endpoint from
    /// scratch and throw std::logic_error on any disagreement.
    bool check_incremental = false;
};

/// Cut*(D) and the block splits of D, built point by point in input order.
/// O(n^3) overall: each new point costs O(n) per previous block split and
/// per previous cutpoint, plus O(n^2) for the singleton split.
CutSystem compute_cut_points(const Metric& d, const EngineOptions& options = {});

/// Deduplicating store of point maps, keyed on the exact value vector.
class CutpointDictionary {
public:
    /// (index of f, whether it was newly inserted).
    std::pair<int, bool> insert(PointMap f);
    int find(const PointMap& f) const;
    int size() const { return static_cast<int>(maps_.size()); }
    const PointMap& operator[](int i) const { return maps_[static_cast<std::size_t>(i)]; }

private:
    std::vector<PointMap> maps_;
    std::unordered_multimap<std::size_t, int> by_hash_;
};

/// True if f was not yet present.
bool dedup_insert(CutpointDictionary& dic, const PointMap& f);

/// Connected components of a support graph in flat, per-point form.
struct ComponentIndex {
    std::vector<int> component_of;    ///< -1 outside the support
    std::vector<int> sizes;
    std::vector<std::uint8_t> clique;
    int support_size = 0;

    static ComponentIndex from_graph(const SupportGraph& g, int n);
    int count() const { return static_cast<int>(sizes.size()); }
    /// Components as sorted member lists, ordered by smallest member.
    std::pair<std::vector<std::vector<int>>, std::vector<bool>> listed() const;
    /// Same partition and clique marks, ignoring component numbering.
    bool same_structure(const ComponentIndex& other) const;
};

/// Components of the support graph of f (defined on points 0..x) from those
/// of a map that agrees with f on 0..x-1: only the edges at x are examined.
/// `prior` must describe a graph on exactly the points 0..x-1. O(x).
ComponentIndex incremental_components(const Metric& d, int x, const ComponentIndex& prior, const PointMap& f);

/// Extends a map on the first k points to k+1 points with
/// f(k) = max over y < k of d(k,y) - f(y).
PointMap extend_cutpoint(const Metric& d, const PointMap& prefix_map);

/// Block splits of d from the block splits of d restricted to its first
/// n-1 points: each prior split is tried with the last point on either side
/// (O(n) each, reusing the stored reference distances) and the singleton
/// split of the last point is tested directly.
std::vector<BlockSplitRecord> extend_splits(const Metric& d, std::span<const BlockSplitRecord> prior);

}  // namespace cutspan
