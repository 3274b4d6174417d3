#include <critplane/error.hpp>
#include <critplane/plane_graph.hpp>

#include <algorithm>
#include <string>

namespace critplane
{
    namespace
    {
        auto pair_name(VertexId a, VertexId b) -> std::string
        {
            return std::to_string(a) + " and " + std::to_string(b);
        }
    }

    auto PlaneGraph::from_rotations(int n, std::vector<std::vector<VertexId>> rotations) -> PlaneGraph
    {
        if (n < 0 || static_cast<int>(rotations.size()) != n)
            throw Error(ErrorKind::VertexOutOfRange,
                    "expected " + std::to_string(n) + " rotations, got " + std::to_string(rotations.size()));
        return build(std::move(rotations), std::vector<char>(n, 1));
    }

    auto PlaneGraph::build(std::vector<std::vector<VertexId>> rotations, std::vector<char> alive) -> PlaneGraph
    {
        const int n = static_cast<int>(rotations.size());
        for (VertexId v = 0 ; v < n ; ++v) {
            const auto & rot = rotations[v];
            for (std::size_t i = 0 ; i < rot.size() ; ++i) {
                auto w = rot[i];
                if (w < 0 || w >= n || ! alive[w])
                    throw Error(ErrorKind::VertexOutOfRange,
                            "vertex " + std::to_string(v) + " lists neighbour " + std::to_string(w));
                if (w == v)
                    throw Error(ErrorKind::LoopEdge, "vertex " + std::to_string(v) + " lists itself");
                if (std::find(rot.begin(), rot.begin() + i, w) != rot.begin() + i)
                    throw Error(ErrorKind::ParallelEdge,
                            "vertex " + std::to_string(v) + " lists " + std::to_string(w) + " twice");
            }
        }

        PlaneGraph g;
        g._rotations = std::move(rotations);
        g._alive = std::move(alive);
        g._alive_count = static_cast<int>(std::count(g._alive.begin(), g._alive.end(), 1));

        for (VertexId v = 0 ; v < n ; ++v)
            for (auto w : g._rotations[v]) {
                if (g.position_in_rotation(w, v) < 0)
                    throw Error(ErrorKind::AsymmetricRotation,
                            "vertex " + std::to_string(v) + " lists " + std::to_string(w)
                            + " but " + std::to_string(w) + " does not list " + std::to_string(v));
                if (v < w)
                    g._edges.push_back({v, w});
            }
        std::sort(g._edges.begin(), g._edges.end());

        g.extract_faces();
        return g;
    }

    auto PlaneGraph::position_in_rotation(VertexId at, VertexId neighbour) const -> int
    {
        const auto & rot = _rotations[at];
        auto it = std::find(rot.begin(), rot.end(), neighbour);
        return it == rot.end() ? -1 : static_cast<int>(it - rot.begin());
    }

    void PlaneGraph::extract_faces()
    {
        const int n = slot_count();
        _corner_faces.assign(n, {});
        for (VertexId v = 0 ; v < n ; ++v)
            _corner_faces[v].assign(_rotations[v].size(), -1);

        for (VertexId v = 0 ; v < n ; ++v) {
            if (! _alive[v])
                continue;
            if (_rotations[v].empty()) {
                _faces.push_back(Face{static_cast<int>(_faces.size()), {}});
                continue;
            }
            for (std::size_t i = 0 ; i < _rotations[v].size() ; ++i) {
                if (_corner_faces[v][i] >= 0)
                    continue;
                Face f{static_cast<int>(_faces.size()), {}};
                Dart d{v, _rotations[v][i]};
                int pos = static_cast<int>(i);
                while (_corner_faces[d.tail][pos] < 0) {
                    _corner_faces[d.tail][pos] = f.id;
                    f.walk.push_back(d);
                    const auto & at_head = _rotations[d.head];
                    int back = position_in_rotation(d.head, d.tail);
                    int next = (back + 1) % static_cast<int>(at_head.size());
                    d = Dart{d.head, at_head[next]};
                    pos = next;
                }
                _faces.push_back(std::move(f));
            }
        }
    }

    auto PlaneGraph::has_vertex(VertexId v) const -> bool
    {
        return v >= 0 && v < slot_count() && _alive[v];
    }

    auto PlaneGraph::max_degree() const -> int
    {
        int result = 0;
        for (const auto & rot : _rotations)
            result = std::max(result, static_cast<int>(rot.size()));
        return result;
    }

    auto PlaneGraph::darts() const -> std::vector<Dart>
    {
        std::vector<Dart> result;
        result.reserve(2 * _edges.size());
        for (VertexId v = 0 ; v < slot_count() ; ++v)
            for (auto w : _rotations[v])
                result.push_back({v, w});
        return result;
    }

    auto PlaneGraph::face_of(Dart d) const -> int
    {
        if (! has_vertex(d.tail))
            throw Error(ErrorKind::MissingElement, "no vertex " + std::to_string(d.tail));
        int pos = position_in_rotation(d.tail, d.head);
        if (pos < 0)
            throw Error(ErrorKind::MissingElement, "no dart " + pair_name(d.tail, d.head));
        return _corner_faces[d.tail][pos];
    }

    auto PlaneGraph::is_connected() const -> bool
    {
        if (_alive_count == 0)
            return false;
        VertexId start = static_cast<VertexId>(std::find(_alive.begin(), _alive.end(), 1) - _alive.begin());
        std::vector<char> seen(slot_count(), 0);
        std::vector<VertexId> stack{start};
        seen[start] = 1;
        int reached = 1;
        while (! stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : _rotations[x])
                if (! seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    stack.push_back(y);
                }
        }
        return reached == _alive_count;
    }

    auto PlaneGraph::abstract_graph() const -> SimpleGraph
    {
        return SimpleGraph::from_edges(slot_count(), _edges);
    }

    auto PlaneGraph::compacted(std::vector<VertexId> * original_ids) const -> PlaneGraph
    {
        if (original_ids) {
            original_ids->clear();
            for (VertexId v = 0 ; v < slot_count() ; ++v)
                if (_alive[v])
                    original_ids->push_back(v);
        }
        auto rotations = compacted_rotations();
        const int n = static_cast<int>(rotations.size());
        return from_rotations(n, std::move(rotations));
    }

    auto PlaneGraph::compacted_rotations() const -> std::vector<std::vector<VertexId>>
    {
        std::vector<VertexId> new_id(slot_count(), -1);
        int next = 0;
        for (VertexId v = 0 ; v < slot_count() ; ++v)
            if (_alive[v])
                new_id[v] = next++;
        std::vector<std::vector<VertexId>> result;
        result.reserve(next);
        for (VertexId v = 0 ; v < slot_count() ; ++v) {
            if (! _alive[v])
                continue;
            auto & rot = result.emplace_back();
            for (auto w : _rotations[v])
                rot.push_back(new_id[w]);
        }
        return result;
    }

    auto euler_characteristic(const PlaneGraph & g) -> int
    {
        if (! g.is_connected())
            throw Error(ErrorKind::Disconnected, "Euler characteristic needs a connected plane graph");
        return g.vertex_count() - g.edge_count() + g.face_count();
    }

    auto incident_3face_count(const PlaneGraph & g, VertexId v) -> int
    {
        if (! g.has_vertex(v))
            throw Error(ErrorKind::MissingElement, "no vertex " + std::to_string(v));
        int count = 0;
        for (int f : g.corner_faces(v))
            if (g.face(f).degree() == 3)
                ++count;
        return count;
    }

    auto adjacent_face_degrees(const PlaneGraph & g, const Face & f) -> std::vector<int>
    {
        std::vector<int> result;
        result.reserve(f.walk.size());
        for (const auto & d : f.walk) {
            int across = g.face_of(d.reversed());
            if (across != f.id)
                result.push_back(g.face(across).degree());
        }
        return result;
    }

    auto delete_vertex(const PlaneGraph & g, VertexId v) -> PlaneGraph
    {
        if (! g.has_vertex(v))
            throw Error(ErrorKind::MissingElement, "no vertex " + std::to_string(v));
        std::vector<std::vector<VertexId>> rotations(g.slot_count());
        std::vector<char> alive(g.slot_count(), 0);
        for (VertexId x = 0 ; x < g.slot_count() ; ++x) {
            if (x == v || ! g.has_vertex(x))
                continue;
            alive[x] = 1;
            for (auto y : g.rotation(x))
                if (y != v)
                    rotations[x].push_back(y);
        }
        return PlaneGraph::build(std::move(rotations), std::move(alive));
    }

    auto delete_edge(const PlaneGraph & g, Edge e) -> PlaneGraph
    {
        e = Edge::normalized(e.u, e.v);
        if (! std::binary_search(g.edges().begin(), g.edges().end(), e))
            throw Error(ErrorKind::MissingElement, "no edge " + pair_name(e.u, e.v));
        std::vector<std::vector<VertexId>> rotations(g.slot_count());
        std::vector<char> alive(g.slot_count(), 0);
        for (VertexId x = 0 ; x < g.slot_count() ; ++x) {
            alive[x] = g.has_vertex(x) ? 1 : 0;
            for (auto y : g.rotation(x))
                if (! (Edge::normalized(x, y) == e))
                    rotations[x].push_back(y);
        }
        return PlaneGraph::build(std::move(rotations), std::move(alive));
    }

    auto face_excess_sum(const PlaneGraph & g) -> long long
    {
        long long sum = 0;
        for (const auto & f : g.faces())
            sum += f.degree() - 4;
        return sum;
    }
}
