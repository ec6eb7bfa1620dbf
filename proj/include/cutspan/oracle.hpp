#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutspan/engine.hpp"
#include "cutspan/metric.hpp"
#include "cutspan/split.hpp"

namespace cutspan {

// Slow, definitional counterparts of the engine and the instance generators
// used to test it.

/// Instance-size limit for the exponential or high-degree polynomial
/// oracles; exceeding it throws CapExceeded.
inline constexpr int kDefaultOracleCap = 16;

/// Every split tested with the definitional isolation index and the
/// cross-sum condition. Records use the lexicographically least labels as
/// reference points. Sorted by split.
std::vector<BlockSplitRecord> brute_force_block_splits(const Metric& d, int cap = kDefaultOracleCap);

/// The recursive construction without any incremental bookkeeping: splits
/// re-tested from scratch, endpoints from the split-map formula, support
/// graphs recomputed. Same output contract as compute_cut_points (up to
/// the choice of reference points).
CutSystem reference_cut_points(const Metric& d, int cap = kDefaultOracleCap);

/// Description of the first difference between the two results as sets
/// (cutpoint maps; splits with their isolation indices), or empty.
std::string compare_cut_systems(const CutSystem& x, const CutSystem& y);

struct VerificationCheck {
    std::string name;
    bool passed = true;
    std::string witness;  ///< empty on success
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool overall = true;
    /// Checks not run, e.g. oracle comparisons above the cap.
    std::vector<std::string> skipped;

    void add(std::string name, bool passed, std::string witness = {});
    const VerificationCheck* failure() const;
};

struct VerifyOptions {
    /// Oracle comparisons run only up to this many points.
    int cap = kDefaultOracleCap;
    /// Also build the realization and decomposition and check them.
    bool realization = true;
};

/// Soundness, completeness, endpoint closure, cardinality bounds and
/// compatibility of cs, plus the realization properties.
VerificationReport verify_cut_system(const Metric& d, const CutSystem& cs, const VerifyOptions& options = {});

/// Deterministic generator: splitmix64 state behind a small bounded
/// sampling interface so results do not depend on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform in [lo, hi].
    int uniform(int lo, int hi);
    bool chance(int numerator, int denominator);
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[uniform(0, i)]);
    }

private:
    std::uint64_t state_;
};

/// Shortest-path metric of a random block graph with n labelled vertices:
/// a tree of cliques of size 2..4 with integer weights 1..20 over a common
/// denominator 1..3. Some cut vertices of degree >= 3 are left unlabelled;
/// the second block is always a single edge.
Metric generate_block_instance(int n, std::uint64_t seed);

/// Uniformly random weights 1..20 over a denominator 1..3 on all pairs,
/// closed under shortest paths.
Metric random_metric(int n, std::uint64_t seed);

/// Input order of d permuted by `order`: point i of the result is point
/// order[i] of d.
Metric reorder(const Metric& d, const std::vector<int>& order);

/// Re-runs the engine on `trials` random reorderings of d and checks that
/// cutpoints and splits are the same sets once mapped back.
VerificationReport permutation_harness(const Metric& d, int trials, std::uint64_t seed);

}  // namespace cutspan
