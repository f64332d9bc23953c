#pragma once

#include "alignment.hpp"
#include "crisim/similarity.hpp"

namespace crisim::detail {

inline SimilarityScore finish(const ScoreAccumulator& acc) {
    SimilarityScore s;
    s.qualitative_pairs = acc.qualitative_pairs;
    s.quantitative_pairs = acc.quantitative_pairs;
    if (acc.qualitative_pairs > 0)
        s.qualitative_avg = acc.qualitative_sum / static_cast<double>(acc.qualitative_pairs);
    if (acc.quantitative_pairs > 0)
        s.quantitative_avg = acc.quantitative_sum / static_cast<double>(acc.quantitative_pairs);
    s.combined = s.qualitative_avg + s.quantitative_avg;
    const auto pairs = acc.qualitative_pairs + acc.quantitative_pairs;
    if (pairs > 0)
        s.normalized = (acc.qualitative_sum + acc.quantitative_sum) / static_cast<double>(pairs);
    return s;
}

}  // namespace crisim::detail
