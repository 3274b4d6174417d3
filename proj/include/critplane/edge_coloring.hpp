#pragma once

#include <critplane/graph.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace critplane
{
    /// colors[i] is the colour (1..k) of edge i of the graph it was built for;
    /// 0 marks an uncoloured edge.
    struct EdgeColoring
    {
        std::vector<int> colors;
        int k = 0;

        auto operator== (const EdgeColoring &) const -> bool = default;
    };

    /// Every edge coloured within 1..k (k = coloring.k unless a limit is given)
    /// and no two edges at a vertex share a colour.
    auto is_proper(const SimpleGraph & g, const EdgeColoring & coloring) -> bool;
    auto is_proper(const SimpleGraph & g, const EdgeColoring & coloring, int colour_limit) -> bool;

    /// Proper colouring with at most max_degree + 1 colours (Misra-Gries fan
    /// rotation plus alternating-path inversion). Edges are inserted in the
    /// graph's edge order.
    auto vizing_color(const SimpleGraph & g) -> EdgeColoring;

    inline constexpr std::uint64_t default_search_budget = 10'000'000;

    /// How a "no k-colouring exists" answer was obtained.
    enum class Refutation
    {
        None,
        DegreeExceedsColours,   // some vertex has more than k edges
        Overfull,               // a component has more than k * floor(n/2) edges
        ExhaustiveSearch
    };

    auto to_string(Refutation r) -> std::string_view;

    struct ColoringSearch
    {
        bool colorable = false;
        EdgeColoring coloring;          // valid iff colorable
        Refutation refutation = Refutation::None;
        std::uint64_t nodes = 0;
    };

    /// Decides whether g has a proper k-edge-colouring. Deterministic: the most
    /// constrained uncoloured edge is branched on first (ties broken by larger
    /// degree sum, then lower index), a new colour may only be the next unused
    /// one, and a vertex of degree k must still be able to place every colour
    /// it is missing. Throws BudgetExceeded once more than `budget` search
    /// nodes are visited.
    auto find_k_edge_coloring(const SimpleGraph & g, int k, std::uint64_t budget = default_search_budget) -> ColoringSearch;

    struct ChromaticIndex
    {
        int value = 0;
        int max_degree = 0;
        EdgeColoring witness;           // proper colouring using `value` colours
        Refutation lower_bound = Refutation::None;   // why value - 1 colours fail
        std::uint64_t nodes = 0;
    };

    /// Exact chromatic index with an optimality witness. Throws BudgetExceeded.
    auto chromatic_index_exact(const SimpleGraph & g, std::optional<std::uint64_t> budget = std::nullopt) -> ChromaticIndex;

    struct ClassVerdict
    {
        bool class_one = false;
        int max_degree = 0;
        int chromatic_index = 0;
        EdgeColoring coloring;          // max_degree-colouring if class one, else a (max_degree+1)-colouring
        Refutation refutation = Refutation::None;
        std::uint64_t nodes = 0;
    };

    auto is_class_one(const SimpleGraph & g, std::optional<std::uint64_t> budget = std::nullopt) -> ClassVerdict;
}
