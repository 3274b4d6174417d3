#pragma once

// Test-only enumeration of plane graphs up to isomorphism (mirror images
// identified), standing in for an external generator such as plantri.

#include <cstdint>
#include <vector>

namespace critplane::testing
{
    using Rotations = std::vector<std::vector<int>>;

    /// Lexicographically least BFS code over every starting dart and both
    /// orientations. Equal codes <=> isomorphic connected plane graphs.
    auto canonical_code(const Rotations & rot) -> std::vector<std::uint8_t>;

    /// All triangulations of the sphere with n >= 3 vertices.
    auto triangulations(int n) -> std::vector<Rotations>;

    /// All connected simple plane graphs with n >= 3 vertices, obtained by
    /// closing the triangulations under bridge-free edge deletion.
    auto connected_plane_graphs(int n) -> std::vector<Rotations>;

    /// Pairwise non-isomorphic connected plane graphs on n vertices made by
    /// deleting random non-bridge edges from triangulations. Deterministic in
    /// the seed; may return fewer than `count` when the space is small.
    auto sampled_connected_plane_graphs(int n, int count, std::uint64_t seed) -> std::vector<Rotations>;
}
