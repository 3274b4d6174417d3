#pragma once

#include <critplane/edge_coloring.hpp>
#include <critplane/graph.hpp>
#include <critplane/plane_graph.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace critplane
{
    /// A proper k-colouring of G - removed, aligned with G's edge list; the
    /// entry of the removed edge is 0.
    struct EdgeDeletionColoring
    {
        Edge removed;
        std::vector<int> colors;

        auto operator== (const EdgeDeletionColoring &) const -> bool = default;
    };

    /// Evidence that `graph` is k-critical: max degree k, no k-edge-colouring
    /// (how that was established is recorded), and a k-colouring of G - e for
    /// every edge e. Single-edge deletions suffice because every proper subgraph
    /// lies inside some G - e and the chromatic index cannot grow on subgraphs.
    struct CriticalityCertificate
    {
        int k = 0;
        SimpleGraph graph;
        Refutation class2_refutation = Refutation::None;
        std::uint64_t class2_search_nodes = 0;
        std::vector<EdgeDeletionColoring> per_edge_colorings;
    };

    enum class RefusalReason
    {
        WrongDelta,
        Disconnected,
        NotClass2,
        NonCriticalEdge
    };

    auto to_string(RefusalReason reason) -> std::string_view;

    struct CriticalityRefusal
    {
        RefusalReason reason = RefusalReason::NotClass2;
        std::string detail;
        std::optional<EdgeColoring> witness;    // NotClass2: a k-colouring of G
        std::optional<Edge> edge;               // NonCriticalEdge: G - edge is still class 2
    };

    using CriticalityResult = std::variant<CriticalityCertificate, CriticalityRefusal>;

    /// Throws BudgetExceeded if any single search runs out of nodes.
    auto is_critical(const SimpleGraph & g, int k, std::uint64_t budget = default_search_budget) -> CriticalityResult;

    /// Re-checks a certificate without the solver: degrees, connectivity,
    /// the arithmetic behind an overfull refutation, and properness of every
    /// stored colouring. Returns an empty string when sound, else the reason.
    auto audit_certificate(const CriticalityCertificate & cert) -> std::string;

    struct CriticalSubgraph
    {
        SimpleGraph graph;                       // isolated vertices dropped, edges lexicographic
        std::vector<VertexId> original_ids;      // graph vertex i was original_ids[i]
        std::optional<PlaneGraph> embedding;     // restricted rotation system, same ids as graph
        CriticalityCertificate certificate;
        int deleted_edges = 0;
    };

    /// Greedy extraction: scans edges in lexicographic order once and deletes
    /// every edge whose removal leaves a class 2 graph of maximum degree k.
    /// Throws WrongDelta or NotClass2 on bad input.
    auto extract_critical_subgraph(const SimpleGraph & g, int k, std::uint64_t budget = default_search_budget) -> CriticalSubgraph;
    auto extract_critical_subgraph(const PlaneGraph & g, int k, std::uint64_t budget = default_search_budget) -> CriticalSubgraph;

    enum class LemmaStatus
    {
        Holds,
        NotApplicable
    };

    struct LemmaVerdict
    {
        LemmaStatus status = LemmaStatus::NotApplicable;
        int k = 0;
        long long vertices = 0;
        long long edges = 0;
        long long lhs = 0;              // 2|E| for k = 6, 7|E| for k = 5
        long long rhs = 0;              // 5|V| + 3 for k = 6, 15|V| for k = 5
        std::string inequality;
    };

    /// Known edge lower bounds for critical graphs: 2|E| >= 5|V| + 3 when k = 6
    /// and 7|E| >= 15|V| when k = 5. Integer arithmetic only. A violation
    /// throws BoundViolated.
    auto check_lemma_bounds(const CriticalityCertificate & cert, const SimpleGraph & g) -> LemmaVerdict;

    auto certificate_to_json(const CriticalityCertificate & cert) -> nlohmann::json;
    auto certificate_from_json(const nlohmann::json & value) -> CriticalityCertificate;
    auto lemma_verdict_to_json(const LemmaVerdict & verdict) -> nlohmann::json;
}
