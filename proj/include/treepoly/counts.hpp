#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace treepoly {

// Number of non-isomorphic unlabeled (free) trees on n vertices, n = 0..22.
inline constexpr std::array<std::uint64_t, 23> kTreeCounts = {
    1,      1,      1,      1,       2,       3,       6,       11,
    23,     47,     106,    235,     551,     1301,    3159,    7741,
    19320,  48629,  123867, 317955,  823065,  2144505, 5623756,
};

inline std::optional<std::uint64_t> known_tree_count(int n) {
    if (n < 0 || n >= static_cast<int>(kTreeCounts.size())) return std::nullopt;
    return kTreeCounts[static_cast<std::size_t>(n)];
}

}  // namespace treepoly
