#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the graph container.

#include <critplane/error.hpp>
#include <critplane/graph.hpp>
#include <critplane/plane_graph.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace critplane::testing
{
    /// Chromatic index by counting k-tuples of matchings covering every edge
    /// (inclusion-exclusion over edge subsets). Needs edge_count <= 24.
    auto brute_force_chromatic_index(const SimpleGraph & g) -> int;

    /// Chromatic index by trying every assignment of k colours to the edges,
    /// smallest k first. Only for tiny graphs.
    auto enumerate_chromatic_index(const SimpleGraph & g) -> int;

    /// G(n, p) with edges in random order.
    auto random_graph(int n, double p, std::mt19937_64 & rng) -> SimpleGraph;

    /// Face degree sum, incidence counts and Euler count straight from the
    /// rotation lists, without PlaneGraph.
    struct RawFaceCounts
    {
        int faces = 0;
        long long degree_sum = 0;
    };
    auto raw_face_counts(const std::vector<std::vector<int>> & rotations) -> RawFaceCounts;

    auto read_file(const std::string & path) -> std::string;
    auto data_path(const std::string & name) -> std::string;       // tests/data/<name>
    auto fixture_path(const std::string & name) -> std::string;    // fixtures/<name>
    auto rules_path(const std::string & name) -> std::string;      // rules/<name>
    auto load_plane(const std::string & data_name) -> PlaneGraph;

    /// Kind of the critplane::Error thrown by f, or nullopt if none.
    template <typename F>
    auto error_kind_of(F && f) -> std::optional<ErrorKind>
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.kind();
        }
        return std::nullopt;
    }
}
