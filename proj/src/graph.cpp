#include <critplane/error.hpp>
#include <critplane/graph.hpp>

#include <algorithm>
#include <string>

namespace critplane
{
    auto Edge::normalized(VertexId a, VertexId b) -> Edge
    {
        return a < b ? Edge{a, b} : Edge{b, a};
    }

    auto SimpleGraph::from_edges(int n, std::vector<Edge> edges) -> SimpleGraph
    {
        if (n < 0)
            throw Error(ErrorKind::VertexOutOfRange, "negative vertex count");

        SimpleGraph g;
        g._n = n;
        g._incident.resize(n);
        std::vector<std::vector<VertexId>> seen(n);
        for (auto & e : edges) {
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
                throw Error(ErrorKind::VertexOutOfRange,
                        "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} outside 0.." + std::to_string(n - 1));
            if (e.u == e.v)
                throw Error(ErrorKind::LoopEdge, "loop at vertex " + std::to_string(e.u));
            e = Edge::normalized(e.u, e.v);
            if (std::find(seen[e.u].begin(), seen[e.u].end(), e.v) != seen[e.u].end())
                throw Error(ErrorKind::ParallelEdge,
                        "repeated edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
            seen[e.u].push_back(e.v);
            g._incident[e.u].push_back(static_cast<int>(g._edges.size()));
            g._incident[e.v].push_back(static_cast<int>(g._edges.size()));
            g._edges.push_back(e);
        }
        return g;
    }

    auto SimpleGraph::max_degree() const -> int
    {
        int result = 0;
        for (const auto & inc : _incident)
            result = std::max(result, static_cast<int>(inc.size()));
        return result;
    }

    auto SimpleGraph::find_edge(VertexId a, VertexId b) const -> int
    {
        if (a < 0 || a >= _n || b < 0 || b >= _n)
            return -1;
        for (int e : _incident[a])
            if (_edges[e].other(a) == b)
                return e;
        return -1;
    }

    namespace
    {
        auto reach_count(const SimpleGraph & g, VertexId start) -> int
        {
            std::vector<char> seen(g.vertex_count(), 0);
            std::vector<VertexId> stack{start};
            seen[start] = 1;
            int count = 1;
            while (! stack.empty()) {
                auto x = stack.back();
                stack.pop_back();
                for (int e : g.incident(x)) {
                    auto y = g.edge(e).other(x);
                    if (! seen[y]) {
                        seen[y] = 1;
                        ++count;
                        stack.push_back(y);
                    }
                }
            }
            return count;
        }
    }

    auto SimpleGraph::is_connected() const -> bool
    {
        if (_n == 0)
            return false;
        return reach_count(*this, 0) == _n;
    }

    auto SimpleGraph::is_connected_ignoring_isolated() const -> bool
    {
        int non_isolated = 0;
        VertexId start = -1;
        for (VertexId v = 0 ; v < _n ; ++v)
            if (degree(v) > 0) {
                ++non_isolated;
                if (start < 0)
                    start = v;
            }
        if (start < 0)
            return true;
        return reach_count(*this, start) == non_isolated;
    }

    auto SimpleGraph::without_edge(int index) const -> SimpleGraph
    {
        std::vector<Edge> rest;
        rest.reserve(_edges.size());
        for (int i = 0 ; i < edge_count() ; ++i)
            if (i != index)
                rest.push_back(_edges[i]);
        return from_edges(_n, std::move(rest));
    }

    auto SimpleGraph::compacted(std::vector<VertexId> & original_ids) const -> SimpleGraph
    {
        std::vector<VertexId> new_id(_n, -1);
        original_ids.clear();
        for (VertexId v = 0 ; v < _n ; ++v)
            if (degree(v) > 0) {
                new_id[v] = static_cast<VertexId>(original_ids.size());
                original_ids.push_back(v);
            }
        std::vector<Edge> edges;
        for (auto & e : _edges)
            edges.push_back(Edge::normalized(new_id[e.u], new_id[e.v]));
        return from_edges(static_cast<int>(original_ids.size()), std::move(edges));
    }

    auto SimpleGraph::sorted() const -> SimpleGraph
    {
        auto edges = _edges;
        std::sort(edges.begin(), edges.end());
        return from_edges(_n, std::move(edges));
    }

    auto is_bipartite(const SimpleGraph & g) -> bool
    {
        std::vector<int> side(g.vertex_count(), -1);
        for (VertexId s = 0 ; s < g.vertex_count() ; ++s) {
            if (side[s] >= 0)
                continue;
            side[s] = 0;
            std::vector<VertexId> stack{s};
            while (! stack.empty()) {
                auto x = stack.back();
                stack.pop_back();
                for (int e : g.incident(x)) {
                    auto y = g.edge(e).other(x);
                    if (side[y] < 0) {
                        side[y] = 1 - side[x];
                        stack.push_back(y);
                    }
                    else if (side[y] == side[x])
                        return false;
                }
            }
        }
        return true;
    }
}
