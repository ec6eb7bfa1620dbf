#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cutspan/metric.hpp"
#include "cutspan/tight_span.hpp"

namespace cutspan {

/// A bipartition A|B of the point set {0, ..., n-1}. Stored in canonical
/// orientation: side A always contains point 0, so A|B and B|A compare equal.
class Split {
public:
    Split() = default;
    /// Builds the split with `side` as one of its parts. Throws
    /// std::invalid_argument if `side` is empty, repeats a point, or is
    /// the whole set.
    static Split from_side(int n, std::span<const int> side);
    /// Builds from a membership mask; mask[i] != 0 puts i on one side.
    static Split from_mask(std::vector<std::uint8_t> mask);

    int size() const { return static_cast<int>(in_a_.size()); }
    bool in_a(int i) const { return in_a_[static_cast<std::size_t>(i)] != 0; }
    std::vector<int> side_a() const;
    std::vector<int> side_b() const;
    const std::vector<std::uint8_t>& mask() const { return in_a_; }
    /// The split of {0, ..., n} obtained by adding point n to side A or B.
    Split extended(bool to_a) const;

    friend bool operator==(const Split&, const Split&) = default;
    friend auto operator<=>(const Split&, const Split&) = default;

    /// "{a,b}|{c,d,e}" using the metric's labels.
    std::string str(const Metric& d) const;

private:
    explicit Split(std::vector<std::uint8_t> in_a) : in_a_(std::move(in_a)) {}
    std::vector<std::uint8_t> in_a_;
};

/// A block split together with its reference points and virtual distances:
/// a_s in side A, b_s in side B, va = D(a_s|B), vb = D(b_s|A) and the
/// isolation index alpha = va + vb - d(a_s, b_s).
struct BlockSplitRecord {
    Split split;
    int a_s = 0;
    int b_s = 0;
    Rational va;
    Rational vb;
    Rational alpha;

    friend bool operator==(const BlockSplitRecord&, const BlockSplitRecord&) = default;
};

/// Isolation index straight from its definition: half the minimum over
/// a', a'' in A and b', b'' in B (repeats allowed) of
/// max(a'b' + a''b'', a'b'' + a''b') - a'a'' - b'b''. O(|A|^2 |B|^2).
Rational isolation_index(const Metric& d, const Split& s);

/// Cross-sum test with fixed a0, b0: a0b0 + ab = a0b + ab0 for all a, b.
bool has_additive_cross_distances(const Metric& d, const Split& s, int a0, int b0);

/// Block split test: additive cross distances and positive isolation index.
/// a_s and b_s are the lexicographically least labels on each side.
std::optional<BlockSplitRecord> is_block_split(const Metric& d, const Split& s);

/// Point on the segment of maps between the two endpoints of a block split:
/// f(a) = D(a|B) - gamma_a, f(b) = D(b|A) - gamma_b, with virtual distances
/// evaluated from their definition. Throws GammaOutOfRange unless both
/// gammas are non-negative and sum to alpha.
PointMap split_map(const Metric& d, const BlockSplitRecord& r, const Rational& gamma_a, const Rational& gamma_b);

/// (f_A, f_B): the endpoints with all of alpha placed on side A, resp. B.
/// Evaluated in O(n) from the record's reference distances.
std::pair<PointMap, PointMap> endpoint_maps(const Metric& d, const BlockSplitRecord& r);

bool are_compatible(const Split& s1, const Split& s2);

}  // namespace cutspan
