#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crisim/record.hpp"

namespace crisim {

/// Per-type record counts of the synthetic France corpus.
const std::vector<std::pair<std::string, std::size_t>>& fixture_type_counts();

inline constexpr std::uint64_t kFixtureSeed = 287;

/// Deterministic synthetic corpus of crises in France. Ids are "<n>_<LeafId>";
/// record 80 is a riverine flood and record 83 a flood without subtype.
std::vector<CrisisRecord> generate_fixture(const Taxonomy& taxonomy, std::uint64_t seed = kFixtureSeed);

}  // namespace crisim
