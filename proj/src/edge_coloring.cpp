#include <critplane/edge_coloring.hpp>
#include <critplane/error.hpp>

#include <algorithm>
#include <bit>
#include <string>

namespace critplane
{
    auto to_string(Refutation r) -> std::string_view
    {
        switch (r) {
            case Refutation::None:                 return "none";
            case Refutation::DegreeExceedsColours: return "degree";
            case Refutation::Overfull:             return "overfull";
            case Refutation::ExhaustiveSearch:     return "exhaustive";
        }
        return "none";
    }

    auto is_proper(const SimpleGraph & g, const EdgeColoring & coloring) -> bool
    {
        return is_proper(g, coloring, coloring.k);
    }

    auto is_proper(const SimpleGraph & g, const EdgeColoring & coloring, int colour_limit) -> bool
    {
        if (static_cast<int>(coloring.colors.size()) != g.edge_count())
            return false;
        for (int c : coloring.colors)
            if (c < 1 || c > colour_limit)
                return false;
        std::vector<int> seen(colour_limit + 1, -1);
        for (VertexId v = 0 ; v < g.vertex_count() ; ++v)
            for (int e : g.incident(v)) {
                int c = coloring.colors[e];
                if (seen[c] == v)
                    return false;
                seen[c] = v;
            }
        return true;
    }

    // Misra-Gries ---------------------------------------------------------------

    namespace
    {
        class FanColourer
        {
            public:
                explicit FanColourer(const SimpleGraph & g) :
                    _g(g),
                    _colours(g.max_degree() + 1),
                    _slot(static_cast<std::size_t>(g.vertex_count()) * (_colours + 1), -1),
                    _colour(g.edge_count(), 0)
                {
                }

                auto run() -> EdgeColoring
                {
                    std::vector<char> in_fan(_g.vertex_count(), 0);
                    for (int e = 0 ; e < _g.edge_count() ; ++e)
                        colour_edge(e, in_fan);
                    int used = 0;
                    for (int c : _colour)
                        used = std::max(used, c);
                    return EdgeColoring{_colour, used};
                }

            private:
                auto slot(VertexId v, int c) -> int & { return _slot[static_cast<std::size_t>(v) * (_colours + 1) + c]; }
                auto is_free(VertexId v, int c) -> bool { return slot(v, c) < 0; }

                auto first_free(VertexId v) -> int
                {
                    for (int c = 1 ; c <= _colours ; ++c)
                        if (is_free(v, c))
                            return c;
                    throw Error(ErrorKind::Internal, "no free colour at vertex " + std::to_string(v));
                }

                void assign(int e, int c)
                {
                    const auto & edge = _g.edge(e);
                    _colour[e] = c;
                    slot(edge.u, c) = e;
                    slot(edge.v, c) = e;
                }

                void clear(int e)
                {
                    const auto & edge = _g.edge(e);
                    int c = _colour[e];
                    slot(edge.u, c) = -1;
                    slot(edge.v, c) = -1;
                    _colour[e] = 0;
                }

                void invert_path(VertexId start, int c, int d)
                {
                    std::vector<int> path;
                    VertexId x = start;
                    int want = d;
                    for (int e = slot(x, want) ; e >= 0 ; e = slot(x, want)) {
                        path.push_back(e);
                        x = _g.edge(e).other(x);
                        want = want == d ? c : d;
                    }
                    std::vector<int> old(path.size());
                    for (std::size_t i = 0 ; i < path.size() ; ++i) {
                        old[i] = _colour[path[i]];
                        clear(path[i]);
                    }
                    for (std::size_t i = 0 ; i < path.size() ; ++i)
                        assign(path[i], old[i] == c ? d : c);
                }

                void colour_edge(int e, std::vector<char> & in_fan)
                {
                    const VertexId u = _g.edge(e).u;
                    std::vector<VertexId> fan{_g.edge(e).v};
                    in_fan[fan[0]] = 1;
                    for (bool grew = true ; grew ; ) {
                        grew = false;
                        for (int c = 1 ; c <= _colours && ! grew ; ++c) {
                            if (! is_free(fan.back(), c) || is_free(u, c))
                                continue;
                            VertexId w = _g.edge(slot(u, c)).other(u);
                            if (! in_fan[w]) {
                                fan.push_back(w);
                                in_fan[w] = 1;
                                grew = true;
                            }
                        }
                    }
                    for (auto w : fan)
                        in_fan[w] = 0;

                    const int c = first_free(u);
                    const int d = first_free(fan.back());
                    if (c != d)
                        invert_path(u, c, d);

                    std::vector<int> fan_edges;
                    for (auto w : fan)
                        fan_edges.push_back(_g.find_edge(u, w));

                    int stop = -1;
                    for (std::size_t i = 0 ; i < fan.size() ; ++i) {
                        if (i > 0) {
                            int ci = _colour[fan_edges[i]];
                            if (ci == 0 || ! is_free(fan[i - 1], ci))
                                break;
                        }
                        if (is_free(fan[i], d)) {
                            stop = static_cast<int>(i);
                            break;
                        }
                    }
                    if (stop < 0)
                        throw Error(ErrorKind::Internal, "fan rotation found no endpoint");

                    for (int j = 0 ; j < stop ; ++j) {
                        int next_colour = _colour[fan_edges[j + 1]];
                        clear(fan_edges[j + 1]);
                        assign(fan_edges[j], next_colour);
                    }
                    assign(fan_edges[stop], d);
                }

                const SimpleGraph & _g;
                int _colours;
                std::vector<int> _slot;
                std::vector<int> _colour;
        };
    }

    auto vizing_color(const SimpleGraph & g) -> EdgeColoring
    {
        return FanColourer(g).run();
    }

    // exact search ----------------------------------------------------------

    namespace
    {
        struct Component
        {
            int n = 0;
            std::vector<Edge> edges;              // local ids
            std::vector<int> original_edge;       // local edge -> edge index in the input graph
            std::vector<std::vector<int>> incident;
        };

        auto components_of(const SimpleGraph & g) -> std::vector<Component>
        {
            std::vector<int> comp(g.vertex_count(), -1), local(g.vertex_count(), -1);
            std::vector<Component> result;
            for (VertexId s = 0 ; s < g.vertex_count() ; ++s) {
                if (comp[s] >= 0 || g.degree(s) == 0)
                    continue;
                int id = static_cast<int>(result.size());
                auto & c = result.emplace_back();
                std::vector<VertexId> stack{s};
                comp[s] = id;
                local[s] = c.n++;
                while (! stack.empty()) {
                    auto x = stack.back();
                    stack.pop_back();
                    for (int e : g.incident(x)) {
                        auto y = g.edge(e).other(x);
                        if (comp[y] < 0) {
                            comp[y] = id;
                            local[y] = c.n++;
                            stack.push_back(y);
                        }
                    }
                }
            }
            for (auto & c : result)
                c.incident.resize(c.n);
            for (int e = 0 ; e < g.edge_count() ; ++e) {
                auto & c = result[comp[g.edge(e).u]];
                int le = static_cast<int>(c.edges.size());
                c.edges.push_back({local[g.edge(e).u], local[g.edge(e).v]});
                c.original_edge.push_back(e);
                c.incident[local[g.edge(e).u]].push_back(le);
                c.incident[local[g.edge(e).v]].push_back(le);
            }
            return result;
        }

        class Backtracker
        {
            public:
                Backtracker(const Component & c, int k, std::uint64_t & nodes, std::uint64_t budget) :
                    _c(c),
                    _k(k),
                    _full(k >= 64 ? ~0ull : (1ull << k) - 1),
                    _used(c.n, 0),
                    _colour(c.edges.size(), 0),
                    _nodes(nodes),
                    _budget(budget),
                    _uncoloured(static_cast<int>(c.edges.size()))
                {
                    for (int v = 0 ; v < c.n ; ++v)
                        if (static_cast<int>(c.incident[v].size()) == k)
                            _saturated.push_back(v);
                }

                auto solve() -> bool { return step(); }
                auto colours() const -> const std::vector<int> & { return _colour; }

            private:
                auto domain(int e) const -> std::uint64_t
                {
                    return _full & ~(_used[_c.edges[e].u] | _used[_c.edges[e].v]);
                }

                auto degree_sum(int e) const -> int
                {
                    return static_cast<int>(_c.incident[_c.edges[e].u].size() + _c.incident[_c.edges[e].v].size());
                }

                auto saturated_vertices_ok() const -> bool
                {
                    for (int v : _saturated) {
                        std::uint64_t missing = _full & ~_used[v];
                        if (! missing)
                            continue;
                        std::uint64_t reachable = 0;
                        for (int e : _c.incident[v])
                            if (! _colour[e])
                                reachable |= domain(e);
                        if (missing & ~reachable)
                            return false;
                    }
                    return true;
                }

                auto step() -> bool
                {
                    if (++_nodes > _budget)
                        throw Error(ErrorKind::BudgetExceeded, "search exceeded " + std::to_string(_budget) + " nodes");
                    if (_uncoloured == 0)
                        return true;

                    int best = -1, best_count = 65, best_sum = -1;
                    for (int e = 0 ; e < static_cast<int>(_colour.size()) ; ++e) {
                        if (_colour[e])
                            continue;
                        int count = std::popcount(domain(e));
                        if (count == 0)
                            return false;
                        int sum = degree_sum(e);
                        if (count < best_count || (count == best_count && sum > best_sum)) {
                            best = e;
                            best_count = count;
                            best_sum = sum;
                        }
                    }
                    if (! saturated_vertices_ok())
                        return false;

                    // colours beyond max_used + 1 are interchangeable with it
                    std::uint64_t allowed = domain(best);
                    if (_max_used + 1 < 64)
                        allowed &= (1ull << (_max_used + 1)) - 1;

                    const auto & edge = _c.edges[best];
                    for (std::uint64_t bits = allowed ; bits ; bits &= bits - 1) {
                        int bit = std::countr_zero(bits);
                        std::uint64_t mask = 1ull << bit;
                        int previous_max = _max_used;
                        _colour[best] = bit + 1;
                        _used[edge.u] |= mask;
                        _used[edge.v] |= mask;
                        _max_used = std::max(_max_used, bit + 1);
                        --_uncoloured;
                        if (step())
                            return true;
                        ++_uncoloured;
                        _max_used = previous_max;
                        _used[edge.u] &= ~mask;
                        _used[edge.v] &= ~mask;
                        _colour[best] = 0;
                    }
                    return false;
                }

                const Component & _c;
                int _k;
                std::uint64_t _full;
                std::vector<std::uint64_t> _used;
                std::vector<int> _colour;
                std::vector<int> _saturated;
                std::uint64_t & _nodes;
                std::uint64_t _budget;
                int _uncoloured;
                int _max_used = 0;
        };
    }

    auto find_k_edge_coloring(const SimpleGraph & g, int k, std::uint64_t budget) -> ColoringSearch
    {
        ColoringSearch result;
        if (k < 0)
            throw Error(ErrorKind::Usage, "negative colour count");
        if (g.max_degree() > k) {
            result.refutation = Refutation::DegreeExceedsColours;
            return result;
        }
        if (k > 64)
            throw Error(ErrorKind::Usage, "exact search supports at most 64 colours");

        auto components = components_of(g);
        for (const auto & c : components)
            if (static_cast<long long>(c.edges.size()) > static_cast<long long>(k) * (c.n / 2)) {
                result.refutation = Refutation::Overfull;
                return result;
            }

        result.coloring.colors.assign(g.edge_count(), 0);
        for (const auto & c : components) {
            Backtracker search(c, k, result.nodes, budget);
            if (! search.solve()) {
                result.refutation = Refutation::ExhaustiveSearch;
                result.coloring = {};
                return result;
            }
            for (std::size_t le = 0 ; le < c.edges.size() ; ++le)
                result.coloring.colors[c.original_edge[le]] = search.colours()[le];
        }
        result.colorable = true;
        result.coloring.k = 0;
        for (int colour : result.coloring.colors)
            result.coloring.k = std::max(result.coloring.k, colour);
        return result;
    }

    auto chromatic_index_exact(const SimpleGraph & g, std::optional<std::uint64_t> budget) -> ChromaticIndex
    {
        ChromaticIndex result;
        result.max_degree = g.max_degree();
        if (g.edge_count() == 0) {
            result.witness = EdgeColoring{{}, 0};
            return result;
        }

        auto search = find_k_edge_coloring(g, result.max_degree, budget.value_or(default_search_budget));
        result.nodes = search.nodes;
        if (search.colorable) {
            result.value = result.max_degree;
            result.witness = std::move(search.coloring);
            result.lower_bound = Refutation::DegreeExceedsColours;
        }
        else {
            result.value = result.max_degree + 1;
            result.witness = vizing_color(g);
            result.lower_bound = search.refutation;
            if (! is_proper(g, result.witness, result.value))
                throw Error(ErrorKind::Internal, "constructive colouring is not proper");
        }
        return result;
    }

    auto is_class_one(const SimpleGraph & g, std::optional<std::uint64_t> budget) -> ClassVerdict
    {
        auto index = chromatic_index_exact(g, budget);
        ClassVerdict verdict;
        verdict.max_degree = index.max_degree;
        verdict.chromatic_index = index.value;
        verdict.class_one = index.value == index.max_degree;
        verdict.coloring = std::move(index.witness);
        verdict.refutation = verdict.class_one ? Refutation::None : index.lower_bound;
        verdict.nodes = index.nodes;
        return verdict;
    }
}
