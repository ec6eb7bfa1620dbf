#include "cutspan/split.hpp"

#include <stdexcept>

namespace cutspan {

Split Split::from_mask(std::vector<std::uint8_t> mask) {
    if (mask.size() < 2) throw std::invalid_argument("a split needs at least two points");
    std::size_t count = 0;
    for (auto& m : mask) {
        m = m ? 1 : 0;
        count += m;
    }
    if (count == 0 || count == mask.size()) throw std::invalid_argument("split side is empty");
    if (!mask[0]) {
        for (auto& m : mask) m ^= 1;
    }
    return Split(std::move(mask));
}

Split Split::from_side(int n, std::span<const int> side) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
    for (int i : side) {
        if (i < 0 || i >= n) throw std::invalid_argument("split point out of range");
        if (mask[static_cast<std::size_t>(i)]) throw std::invalid_argument("split side repeats a point");
        mask[static_cast<std::size_t>(i)] = 1;
    }
    return from_mask(std::move(mask));
}

Split Split::extended(bool to_a) const {
    std::vector<std::uint8_t> mask;
    mask.reserve(in_a_.size() + 1);
    mask.assign(in_a_.begin(), in_a_.end());
    mask.push_back(to_a ? 1 : 0);
    return Split(std::move(mask));
}

std::vector<int> Split::side_a() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        if (in_a(i)) out.push_back(i);
    }
    return out;
}

std::vector<int> Split::side_b() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        if (!in_a(i)) out.push_back(i);
    }
    return out;
}

std::string Split::str(const Metric& d) const {
    auto render = [&](const std::vector<int>& side) {
        std::string s = "{";
        for (std::size_t i = 0; i < side.size(); ++i) {
            if (i) s += ",";
            s += d.label(side[i]);
        }
        return s + "}";
    };
    return render(side_a()) + "|" + render(side_b());
}

Rational isolation_index(const Metric& d, const Split& s) {
    const auto side_a = s.side_a();
    const auto side_b = s.side_b();
    std::optional<Rational> best;
    for (int a1 : side_a) {
        for (int a2 : side_a) {
            for (int b1 : side_b) {
                for (int b2 : side_b) {
                    Rational v = max(d(a1, b1) + d(a2, b2), d(a1, b2) + d(a2, b1)) - d(a1, a2) - d(b1, b2);
                    if (!best || v < *best) best = std::move(v);
                }
            }
        }
    }
    return best->half();
}

bool has_additive_cross_distances(const Metric& d, const Split& s, int a0, int b0) {
    const auto side_a = s.side_a();
    const auto side_b = s.side_b();
    for (int a : side_a) {
        for (int b : side_b) {
            if (d(a0, b0) + d(a, b) != d(a0, b) + d(a, b0)) return false;
        }
    }
    return true;
}

namespace {

int least_label(const Metric& d, const std::vector<int>& side) {
    int best = side.front();
    for (int i : side) {
        if (d.label_rank(i) < d.label_rank(best)) best = i;
    }
    return best;
}

}  // namespace

std::optional<BlockSplitRecord> is_block_split(const Metric& d, const Split& s) {
    const auto side_a = s.side_a();
    const auto side_b = s.side_b();
    const int a0 = least_label(d, side_a);
    const int b0 = least_label(d, side_b);
    if (!has_additive_cross_distances(d, s, a0, b0)) return std::nullopt;
    BlockSplitRecord r{s, a0, b0, virtual_distance(d, kuratowski_map(d, a0), side_b),
                       virtual_distance(d, kuratowski_map(d, b0), side_a), {}};
    r.alpha = r.va + r.vb - d(a0, b0);
    if (r.alpha.sign() <= 0) return std::nullopt;
    return r;
}

PointMap split_map(const Metric& d, const BlockSplitRecord& r, const Rational& gamma_a, const Rational& gamma_b) {
    if (gamma_a.sign() < 0 || gamma_b.sign() < 0 || gamma_a + gamma_b != r.alpha) {
        throw GammaOutOfRange("gammas " + gamma_a.str() + ", " + gamma_b.str() + " do not split alpha = " +
                              r.alpha.str());
    }
    const auto side_a = r.split.side_a();
    const auto side_b = r.split.side_b();
    std::vector<Rational> f(static_cast<std::size_t>(d.size()));
    for (int a : side_a) f[static_cast<std::size_t>(a)] = virtual_distance(d, kuratowski_map(d, a), side_b) - gamma_a;
    for (int b : side_b) f[static_cast<std::size_t>(b)] = virtual_distance(d, kuratowski_map(d, b), side_a) - gamma_b;
    return PointMap(std::move(f));
}

std::pair<PointMap, PointMap> endpoint_maps(const Metric& d, const BlockSplitRecord& r) {
    // With cross distances additive, D(a|B) = va - d(a_s,b_s) + d(a,b_s) and
    // D(b|A) = vb - d(a_s,b_s) + d(a_s,b).
    const int n = r.split.size();
    std::vector<Rational> fa(static_cast<std::size_t>(n));
    std::vector<Rational> fb(static_cast<std::size_t>(n));
    const Rational& ab = d(r.a_s, r.b_s);
    for (int y = 0; y < n; ++y) {
        if (r.split.in_a(y)) {
            fa[static_cast<std::size_t>(y)] = d(y, r.b_s) - r.vb;
            fb[static_cast<std::size_t>(y)] = r.va - ab + d(y, r.b_s);
        } else {
            fa[static_cast<std::size_t>(y)] = r.vb - ab + d(r.a_s, y);
            fb[static_cast<std::size_t>(y)] = d(r.a_s, y) - r.va;
        }
    }
    return {PointMap(std::move(fa)), PointMap(std::move(fb))};
}

bool are_compatible(const Split& s1, const Split& s2) {
    bool aa = false, ab = false, ba = false, bb = false;
    for (int i = 0; i < s1.size(); ++i) {
        const bool x = s1.in_a(i);
        const bool y = s2.in_a(i);
        aa |= x && y;
        ab |= x && !y;
        ba |= !x && y;
        bb |= !x && !y;
    }
    return !(aa && ab && ba && bb);
}

}  // namespace cutspan
