#ifndef ECSEA_DISTANCE_HPP
#define ECSEA_DISTANCE_HPP

#include "ecsea/event_log.hpp"

#include <cstddef>
#include <span>

namespace ecsea {

/// Damerau-Levenshtein distance over label sequences, optimal string
/// alignment variant: insertions, deletions, substitutions and adjacent
/// transpositions at unit cost, no substring edited twice.
std::size_t dld(std::span<const ActivityLabel> a,
                std::span<const ActivityLabel> b);

/// 1 - dld(a,b) / max(|a|,|b|), in [0,1]. Two empty sequences compare
/// as identical (1.0).
double normalized_similarity(std::span<const ActivityLabel> a,
                             std::span<const ActivityLabel> b);

} // namespace ecsea

#endif // ECSEA_DISTANCE_HPP
