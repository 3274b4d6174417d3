#pragma once

#include <compare>
#include <span>
#include <utility>
#include <vector>

namespace critplane
{
    using VertexId = int;

    /// Unordered vertex pair, stored with first < second.
    struct Edge
    {
        VertexId u = 0;
        VertexId v = 0;

        static auto normalized(VertexId a, VertexId b) -> Edge;

        auto other(VertexId x) const -> VertexId { return x == u ? v : u; }
        auto touches(VertexId x) const -> bool { return x == u || x == v; }

        auto operator<=> (const Edge &) const = default;
    };

    /// Finite simple graph without an embedding. Edge indices follow insertion
    /// order; that order is what the constructive colourer processes.
    class SimpleGraph
    {
        public:
            SimpleGraph() = default;

            /// Throws LoopEdge, ParallelEdge or VertexOutOfRange.
            static auto from_edges(int n, std::vector<Edge> edges) -> SimpleGraph;

            auto vertex_count() const -> int { return _n; }
            auto edge_count() const -> int { return static_cast<int>(_edges.size()); }
            auto edges() const -> std::span<const Edge> { return _edges; }
            auto edge(int index) const -> const Edge & { return _edges[index]; }

            /// Incident edge indices of v, in insertion order.
            auto incident(VertexId v) const -> std::span<const int> { return _incident[v]; }
            auto degree(VertexId v) const -> int { return static_cast<int>(_incident[v].size()); }
            auto max_degree() const -> int;

            /// Index of edge {a,b}, or -1.
            auto find_edge(VertexId a, VertexId b) const -> int;

            /// Connected on its non-isolated vertices, ignoring isolated ones.
            auto is_connected_ignoring_isolated() const -> bool;
            auto is_connected() const -> bool;

            /// Same vertex set, edge `index` removed; remaining edges keep relative order.
            auto without_edge(int index) const -> SimpleGraph;

            /// Drops isolated vertices; `original_ids[i]` is the old id of new vertex i.
            auto compacted(std::vector<VertexId> & original_ids) const -> SimpleGraph;

            /// Same graph with edges sorted lexicographically.
            auto sorted() const -> SimpleGraph;

            auto operator== (const SimpleGraph & other) const -> bool
            {
                return _n == other._n && _edges == other._edges;
            }

        private:
            int _n = 0;
            std::vector<Edge> _edges;
            std::vector<std::vector<int>> _incident;
    };

    auto is_bipartite(const SimpleGraph & g) -> bool;
}
