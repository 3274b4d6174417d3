#pragma once

#include <critplane/graph.hpp>

#include <compare>
#include <span>
#include <vector>

namespace critplane
{
    /// Oriented edge (half-edge).
    struct Dart
    {
        VertexId tail = 0;
        VertexId head = 0;

        auto reversed() const -> Dart { return {head, tail}; }
        auto operator<=> (const Dart &) const = default;
    };

    /// A facial walk. The walk of an isolated vertex is empty (degree 0).
    struct Face
    {
        int id = 0;
        std::vector<Dart> walk;

        auto degree() const -> int { return static_cast<int>(walk.size()); }
    };

    /// Finite simple plane graph given by a rotation system: for every vertex the
    /// clockwise cyclic order of its neighbours. Faces are derived by the
    /// next-dart rule: the walk continues from dart (u,v) along (v,w), where w
    /// follows u in the rotation of v.
    ///
    /// Vertex ids are dense 0-based slots. Deleting a vertex leaves its slot
    /// empty so other ids keep their meaning; compacted() renumbers.
    ///
    /// Values are immutable once built.
    class PlaneGraph
    {
        public:
            PlaneGraph() = default;

            /// Throws VertexOutOfRange, LoopEdge, ParallelEdge, AsymmetricRotation.
            static auto from_rotations(int n, std::vector<std::vector<VertexId>> rotations) -> PlaneGraph;

            /// Number of id slots, including deleted ones.
            auto slot_count() const -> int { return static_cast<int>(_rotations.size()); }
            auto has_vertex(VertexId v) const -> bool;
            auto vertex_count() const -> int { return _alive_count; }
            auto edge_count() const -> int { return static_cast<int>(_edges.size()); }
            auto face_count() const -> int { return static_cast<int>(_faces.size()); }

            auto rotation(VertexId v) const -> std::span<const VertexId> { return _rotations[v]; }
            auto degree(VertexId v) const -> int { return static_cast<int>(_rotations[v].size()); }
            auto max_degree() const -> int;

            /// Lexicographically ordered.
            auto edges() const -> std::span<const Edge> { return _edges; }
            auto darts() const -> std::vector<Dart>;
            auto faces() const -> std::span<const Face> { return _faces; }
            auto face(int id) const -> const Face & { return _faces[id]; }

            /// Id of the face whose walk contains d. d must be a dart of the graph.
            auto face_of(Dart d) const -> int;

            /// Faces met at the corners of v in rotation order, one entry per corner.
            auto corner_faces(VertexId v) const -> std::span<const int> { return _corner_faces[v]; }

            auto is_connected() const -> bool;

            /// Abstract graph on the same id slots (deleted slots become isolated
            /// vertices), edges in lexicographic order.
            auto abstract_graph() const -> SimpleGraph;

            /// Renumbers live vertices densely, preserving relative order.
            auto compacted(std::vector<VertexId> * original_ids = nullptr) const -> PlaneGraph;

            /// Rotation lists with deleted vertices compacted away.
            auto compacted_rotations() const -> std::vector<std::vector<VertexId>>;

            auto operator== (const PlaneGraph & other) const -> bool
            {
                return _rotations == other._rotations && _alive == other._alive;
            }

        private:
            friend auto delete_vertex(const PlaneGraph & g, VertexId v) -> PlaneGraph;
            friend auto delete_edge(const PlaneGraph & g, Edge e) -> PlaneGraph;

            static auto build(std::vector<std::vector<VertexId>> rotations, std::vector<char> alive) -> PlaneGraph;
            auto position_in_rotation(VertexId at, VertexId neighbour) const -> int;
            void extract_faces();

            std::vector<std::vector<VertexId>> _rotations;
            std::vector<char> _alive;
            int _alive_count = 0;
            std::vector<Edge> _edges;
            std::vector<Face> _faces;
            std::vector<std::vector<int>> _corner_faces;
    };

    /// |V| - |E| + |F|. Throws Disconnected for disconnected or empty graphs.
    auto euler_characteristic(const PlaneGraph & g) -> int;

    /// Vertex-face incidences of v with 3-faces, counted with multiplicity
    /// along facial walks (one per corner).
    auto incident_3face_count(const PlaneGraph & g, VertexId v) -> int;

    /// Degrees of the faces across each edge of f, one entry per dart of f's
    /// walk. An edge with f on both sides contributes nothing.
    auto adjacent_face_degrees(const PlaneGraph & g, const Face & f) -> std::vector<int>;

    /// Both throw MissingElement when the element is absent.
    auto delete_vertex(const PlaneGraph & g, VertexId v) -> PlaneGraph;
    auto delete_edge(const PlaneGraph & g, Edge e) -> PlaneGraph;

    /// Sum over faces of (degree - 4).
    auto face_excess_sum(const PlaneGraph & g) -> long long;
}
