#include <critplane/criticality.hpp>
#include <critplane/error.hpp>
#include <critplane/io_formats.hpp>

#include <algorithm>

using nlohmann::json;

namespace critplane
{
    auto to_string(RefusalReason reason) -> std::string_view
    {
        switch (reason) {
            case RefusalReason::WrongDelta:      return "WrongDelta";
            case RefusalReason::Disconnected:    return "Disconnected";
            case RefusalReason::NotClass2:       return "NotClass2";
            case RefusalReason::NonCriticalEdge: return "NonCriticalEdge";
        }
        return "Unknown";
    }

    namespace
    {
        auto edge_name(const Edge & e) -> std::string
        {
            return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
        }

        auto deletion_coloring(const SimpleGraph & g, int removed, const EdgeColoring & of_rest) -> EdgeDeletionColoring
        {
            EdgeDeletionColoring result{g.edge(removed), std::vector<int>(g.edge_count(), 0)};
            for (int e = 0, r = 0 ; e < g.edge_count() ; ++e)
                if (e != removed)
                    result.colors[e] = of_rest.colors[r++];
            return result;
        }
    }

    auto is_critical(const SimpleGraph & g, int k, std::uint64_t budget) -> CriticalityResult
    {
        if (g.max_degree() != k)
            return CriticalityRefusal{RefusalReason::WrongDelta,
                "maximum degree is " + std::to_string(g.max_degree()) + ", not " + std::to_string(k), {}, {}};
        if (! g.is_connected())
            return CriticalityRefusal{RefusalReason::Disconnected, "critical graphs are connected", {}, {}};

        auto whole = find_k_edge_coloring(g, k, budget);
        if (whole.colorable)
            return CriticalityRefusal{RefusalReason::NotClass2,
                "graph has a proper " + std::to_string(k) + "-edge-colouring", whole.coloring, {}};

        CriticalityCertificate cert;
        cert.k = k;
        cert.graph = g;
        cert.class2_refutation = whole.refutation;
        cert.class2_search_nodes = whole.nodes;
        for (int e = 0 ; e < g.edge_count() ; ++e) {
            auto rest = g.without_edge(e);
            auto search = find_k_edge_coloring(rest, k, budget);
            if (! search.colorable)
                return CriticalityRefusal{RefusalReason::NonCriticalEdge,
                    "G - " + edge_name(g.edge(e)) + " is still class 2", {}, g.edge(e)};
            cert.per_edge_colorings.push_back(deletion_coloring(g, e, search.coloring));
        }
        return cert;
    }

    auto audit_certificate(const CriticalityCertificate & cert) -> std::string
    {
        const auto & g = cert.graph;
        if (g.max_degree() != cert.k)
            return "maximum degree differs from k";
        if (! g.is_connected())
            return "graph is disconnected";
        for (VertexId v = 0 ; v < g.vertex_count() ; ++v)
            if (g.degree(v) < 2)
                return "vertex " + std::to_string(v) + " has degree below 2";
        if (cert.class2_refutation == Refutation::None)
            return "no class 2 refutation recorded";
        if (cert.class2_refutation == Refutation::Overfull
                && static_cast<long long>(g.edge_count()) <= static_cast<long long>(cert.k) * (g.vertex_count() / 2))
            return "overfull refutation does not hold: |E| <= k * floor(|V|/2)";
        if (static_cast<int>(cert.per_edge_colorings.size()) != g.edge_count())
            return "expected one colouring per edge";

        for (int e = 0 ; e < g.edge_count() ; ++e) {
            const auto & entry = cert.per_edge_colorings[e];
            if (! (entry.removed == g.edge(e)))
                return "colouring " + std::to_string(e) + " removes the wrong edge";
            if (static_cast<int>(entry.colors.size()) != g.edge_count() || entry.colors[e] != 0)
                return "colouring " + std::to_string(e) + " is malformed";
            std::vector<int> seen(static_cast<std::size_t>(g.vertex_count()) * (cert.k + 1), 0);
            for (int f = 0 ; f < g.edge_count() ; ++f) {
                if (f == e)
                    continue;
                int c = entry.colors[f];
                if (c < 1 || c > cert.k)
                    return "colouring of G - " + edge_name(g.edge(e)) + " uses colour " + std::to_string(c);
                for (auto x : {g.edge(f).u, g.edge(f).v}) {
                    auto & slot = seen[static_cast<std::size_t>(x) * (cert.k + 1) + c];
                    if (slot)
                        return "colouring of G - " + edge_name(g.edge(e)) + " repeats colour "
                            + std::to_string(c) + " at vertex " + std::to_string(x);
                    slot = 1;
                }
            }
        }
        return {};
    }

    namespace
    {
        struct Extraction
        {
            SimpleGraph graph;
            std::vector<Edge> removed;
        };

        auto greedy_extract(const SimpleGraph & input, int k, std::uint64_t budget) -> Extraction
        {
            if (input.max_degree() != k)
                throw Error(ErrorKind::WrongDelta,
                        "maximum degree is " + std::to_string(input.max_degree()) + ", not " + std::to_string(k));
            Extraction result{input.sorted(), {}};
            if (find_k_edge_coloring(result.graph, k, budget).colorable)
                throw Error(ErrorKind::NotClass2, "graph has a proper " + std::to_string(k) + "-edge-colouring");

            // One pass is enough: if H - e was k-colourable (or lost degree k),
            // so is every later H' - e with H' a subgraph of H.
            int i = 0;
            while (i < result.graph.edge_count()) {
                auto candidate = result.graph.without_edge(i);
                if (candidate.max_degree() == k && ! find_k_edge_coloring(candidate, k, budget).colorable) {
                    result.removed.push_back(result.graph.edge(i));
                    result.graph = std::move(candidate);
                }
                else
                    ++i;
            }
            return result;
        }

        auto finish(const SimpleGraph & reduced, int k, std::uint64_t budget, CriticalSubgraph & out) -> void
        {
            out.graph = reduced.compacted(out.original_ids);
            auto verdict = is_critical(out.graph, k, budget);
            if (auto * refusal = std::get_if<CriticalityRefusal>(&verdict))
                throw Error(ErrorKind::Internal, "extracted subgraph failed certification: " + refusal->detail);
            out.certificate = std::get<CriticalityCertificate>(std::move(verdict));
        }
    }

    auto extract_critical_subgraph(const SimpleGraph & g, int k, std::uint64_t budget) -> CriticalSubgraph
    {
        auto extraction = greedy_extract(g, k, budget);
        CriticalSubgraph out;
        out.deleted_edges = static_cast<int>(extraction.removed.size());
        finish(extraction.graph, k, budget, out);
        return out;
    }

    auto extract_critical_subgraph(const PlaneGraph & g, int k, std::uint64_t budget) -> CriticalSubgraph
    {
        auto extraction = greedy_extract(g.abstract_graph(), k, budget);
        CriticalSubgraph out;
        out.deleted_edges = static_cast<int>(extraction.removed.size());

        auto plane = g;
        for (const auto & e : extraction.removed)
            plane = delete_edge(plane, e);
        for (VertexId v = 0 ; v < plane.slot_count() ; ++v)
            if (plane.has_vertex(v) && plane.degree(v) == 0)
                plane = delete_vertex(plane, v);
        out.embedding = plane.compacted();

        finish(extraction.graph, k, budget, out);
        if (! (out.embedding->abstract_graph() == out.graph))
            throw Error(ErrorKind::Internal, "restricted embedding does not match the extracted graph");
        return out;
    }

    auto check_lemma_bounds(const CriticalityCertificate & cert, const SimpleGraph & g) -> LemmaVerdict
    {
        LemmaVerdict verdict;
        verdict.k = cert.k;
        verdict.vertices = g.vertex_count();
        verdict.edges = g.edge_count();
        if (cert.k == 6) {
            verdict.lhs = 2 * verdict.edges;
            verdict.rhs = 5 * verdict.vertices + 3;
            verdict.inequality = "2|E| >= 5|V| + 3";
        }
        else if (cert.k == 5) {
            verdict.lhs = 7 * verdict.edges;
            verdict.rhs = 15 * verdict.vertices;
            verdict.inequality = "7|E| >= 15|V|";
        }
        else
            return verdict;

        if (verdict.lhs < verdict.rhs)
            throw Error(ErrorKind::BoundViolated,
                    verdict.inequality + " fails: " + std::to_string(verdict.lhs) + " < " + std::to_string(verdict.rhs));
        verdict.status = LemmaStatus::Holds;
        return verdict;
    }

    auto certificate_to_json(const CriticalityCertificate & cert) -> json
    {
        json colorings = json::array();
        for (const auto & entry : cert.per_edge_colorings)
            colorings.push_back({{"removed", {entry.removed.u, entry.removed.v}}, {"colors", entry.colors}});
        return json{
            {"k", cert.k},
            {"graph", edges_to_json(cert.graph)},
            {"class2_refutation", {{"method", to_string(cert.class2_refutation)}, {"search_nodes", cert.class2_search_nodes}}},
            {"per_edge_colorings", colorings},
            {"basis", "every proper subgraph lies in some G-e and the chromatic index is subgraph-monotone"}
        };
    }

    auto certificate_from_json(const json & value) -> CriticalityCertificate
    {
        try {
            CriticalityCertificate cert;
            cert.k = value.at("k").get<int>();
            cert.graph = edges_from_json(value.at("graph"));
            auto method = value.at("class2_refutation").at("method").get<std::string>();
            if (method == "overfull")
                cert.class2_refutation = Refutation::Overfull;
            else if (method == "exhaustive")
                cert.class2_refutation = Refutation::ExhaustiveSearch;
            else if (method == "degree")
                cert.class2_refutation = Refutation::DegreeExceedsColours;
            else
                cert.class2_refutation = Refutation::None;
            cert.class2_search_nodes = value.at("class2_refutation").value("search_nodes", std::uint64_t{0});
            for (const auto & entry : value.at("per_edge_colorings")) {
                auto removed = entry.at("removed").get<std::vector<int>>();
                if (removed.size() != 2)
                    throw Error(ErrorKind::SchemaViolation, "\"removed\" must be a pair");
                cert.per_edge_colorings.push_back(
                        {Edge::normalized(removed[0], removed[1]), entry.at("colors").get<std::vector<int>>()});
            }
            return cert;
        }
        catch (const json::exception & e) {
            throw Error(ErrorKind::SchemaViolation, std::string("certificate: ") + e.what());
        }
    }

    auto lemma_verdict_to_json(const LemmaVerdict & verdict) -> json
    {
        if (verdict.status == LemmaStatus::NotApplicable)
            return json{{"status", "NotApplicable"}, {"k", verdict.k}};
        return json{
            {"status", "Holds"},
            {"k", verdict.k},
            {"inequality", verdict.inequality},
            {"vertices", verdict.vertices},
            {"edges", verdict.edges},
            {"lhs", verdict.lhs},
            {"rhs", verdict.rhs}
        };
    }
}
