#pragma once

// Greedy pairing shared by align() and the prepared engine.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "crisim/triple.hpp"

namespace crisim::detail {

struct GroupPair {
    std::optional<std::size_t> left;
    std::optional<std::size_t> right;
    double similarity = 0;
};

/// Pairs `nl` left items with `nr` right items. `sim(i, j)` scores a pair;
/// `object(side, i)` exposes objects for tie-breaking (side 0 = left).
/// Ties break on the unordered object pair, then on indices.
template <typename Sim, typename Object>
std::vector<GroupPair> pair_group(std::size_t nl, std::size_t nr, Sim&& sim, Object&& object) {
    std::vector<GroupPair> out;
    if (nl == 1 && nr == 1) {
        out.push_back({0, 0, sim(0, 0)});
        return out;
    }

    struct Candidate {
        double similarity;
        std::size_t i;
        std::size_t j;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(nl * nr);
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t j = 0; j < nr; ++j) candidates.push_back({sim(i, j), i, j});

    const auto before = [&](const Candidate& a, const Candidate& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        const ObjectValue& al = object(0, a.i);
        const ObjectValue& ar = object(1, a.j);
        const ObjectValue& bl = object(0, b.i);
        const ObjectValue& br = object(1, b.j);
        const bool a_swap = object_less(ar, al);
        const bool b_swap = object_less(br, bl);
        const ObjectValue& a_lo = a_swap ? ar : al;
        const ObjectValue& a_hi = a_swap ? al : ar;
        const ObjectValue& b_lo = b_swap ? br : bl;
        const ObjectValue& b_hi = b_swap ? bl : br;
        if (object_less(a_lo, b_lo)) return true;
        if (object_less(b_lo, a_lo)) return false;
        if (object_less(a_hi, b_hi)) return true;
        if (object_less(b_hi, a_hi)) return false;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::stable_sort(candidates.begin(), candidates.end(), before);

    std::vector<bool> left_used(nl, false);
    std::vector<bool> right_used(nr, false);
    for (const auto& c : candidates) {
        if (left_used[c.i] || right_used[c.j]) continue;
        left_used[c.i] = right_used[c.j] = true;
        out.push_back({c.i, c.j, c.similarity});
    }
    for (std::size_t i = 0; i < nl; ++i)
        if (!left_used[i]) out.push_back({i, std::nullopt, 0.0});
    for (std::size_t j = 0; j < nr; ++j)
        if (!right_used[j]) out.push_back({std::nullopt, j, 0.0});
    return out;
}

/// Accumulates aligned-pair similarities into the set-level score terms.
struct ScoreAccumulator {
    double qualitative_sum = 0;
    double quantitative_sum = 0;
    std::size_t qualitative_pairs = 0;
    std::size_t quantitative_pairs = 0;

    void add(TripleKind kind, double similarity) {
        if (kind == TripleKind::Qualitative) {
            qualitative_sum += similarity;
            ++qualitative_pairs;
        } else {
            quantitative_sum += similarity;
            ++quantitative_pairs;
        }
    }
};

}  // namespace crisim::detail
