#include <critplane/criticality.hpp>
#include <critplane/io_formats.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace critplane;
using namespace critplane::testing;

namespace
{
    auto cycle(int n) -> SimpleGraph
    {
        std::vector<Edge> edges;
        for (int i = 0 ; i < n ; ++i)
            edges.push_back(Edge::normalized(i, (i + 1) % n));
        return SimpleGraph::from_edges(n, edges);
    }

    auto graph_with(int n, int m) -> SimpleGraph
    {
        std::vector<Edge> edges;
        for (int a = 0 ; a < n && static_cast<int>(edges.size()) < m ; ++a)
            for (int b = a + 1 ; b < n && static_cast<int>(edges.size()) < m ; ++b)
                edges.push_back({a, b});
        return SimpleGraph::from_edges(n, edges);
    }

    auto certificate_for(int k, const SimpleGraph & g) -> CriticalityCertificate
    {
        CriticalityCertificate cert;
        cert.k = k;
        cert.graph = g;
        return cert;
    }
}

TEST_CASE("odd cycles are 2-critical")
{
    for (int n : {3, 5, 7}) {
        auto verdict = is_critical(cycle(n), 2);
        auto * cert = std::get_if<CriticalityCertificate>(&verdict);
        REQUIRE(cert);
        CHECK(cert->per_edge_colorings.size() == static_cast<std::size_t>(n));
        CHECK(cert->class2_refutation == Refutation::Overfull);
        CHECK(audit_certificate(*cert).empty());
    }
}

TEST_CASE("refusals")
{
    auto k4 = SimpleGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto r = std::get<CriticalityRefusal>(is_critical(k4, 3));
    CHECK(r.reason == RefusalReason::NotClass2);
    REQUIRE(r.witness);
    CHECK(is_proper(k4, *r.witness, 3));

    CHECK(std::get<CriticalityRefusal>(is_critical(k4, 4)).reason == RefusalReason::WrongDelta);
    CHECK(std::get<CriticalityRefusal>(is_critical(cycle(4), 2)).reason == RefusalReason::NotClass2);

    auto two_triangles = SimpleGraph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(std::get<CriticalityRefusal>(is_critical(two_triangles, 2)).reason == RefusalReason::Disconnected);

    // a triangle with a pendant edge is class 1
    auto paw = SimpleGraph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    CHECK(std::get<CriticalityRefusal>(is_critical(paw, 3)).reason == RefusalReason::NotClass2);
}

TEST_CASE("the subdivided K4 is 3-critical")
{
    auto g = load_plane("k4_subdivided.json").abstract_graph();
    auto verdict = is_critical(g, 3);
    auto * cert = std::get_if<CriticalityCertificate>(&verdict);
    REQUIRE(cert);
    CHECK(audit_certificate(*cert).empty());
}

TEST_CASE("Petersen graph is class 2 but not critical")
{
    auto petersen = parse_graph6("IheA@GUAo");
    auto r = std::get<CriticalityRefusal>(is_critical(petersen, 3));
    CHECK(r.reason == RefusalReason::NonCriticalEdge);
    REQUIRE(r.edge);

    auto sub = extract_critical_subgraph(petersen, 3);
    CHECK(sub.deleted_edges > 0);
    CHECK(sub.graph.max_degree() == 3);
    CHECK(audit_certificate(sub.certificate).empty());
    CHECK(brute_force_chromatic_index(sub.graph) == 4);
    for (int e = 0 ; e < sub.graph.edge_count() ; ++e)
        CHECK(brute_force_chromatic_index(sub.graph.without_edge(e)) == 3);
}

TEST_CASE("extraction keeps an embedding")
{
    // the subdivided K4 with a pendant edge at the subdivision vertex
    auto rotations = load_plane("k4_subdivided.json").compacted_rotations();
    rotations[4].push_back(5);
    rotations.push_back({4});
    auto g = PlaneGraph::from_rotations(6, rotations);
    auto pruned = extract_critical_subgraph(g, 3);
    CHECK(pruned.deleted_edges == 1);
    CHECK(pruned.original_ids == std::vector<VertexId>{0, 1, 2, 3, 4});
    REQUIRE(pruned.embedding);
    CHECK(pruned.embedding->face_count() == 4);
    CHECK(pruned.embedding->abstract_graph() == pruned.graph);

    auto icosa = extract_critical_subgraph(load_plane("icosahedron_subdivided.json"), 5);
    REQUIRE(icosa.embedding);
    CHECK(icosa.embedding->abstract_graph() == icosa.graph);
    CHECK(euler_characteristic(*icosa.embedding) == 2);
    CHECK(audit_certificate(icosa.certificate).empty());
    auto lemma = check_lemma_bounds(icosa.certificate, icosa.graph);
    CHECK(lemma.status == LemmaStatus::Holds);
    CHECK(lemma.lhs >= lemma.rhs);

    CHECK(error_kind_of([&] { extract_critical_subgraph(g, 4); }) == ErrorKind::WrongDelta);
    CHECK(error_kind_of([] { extract_critical_subgraph(load_plane("cube.json"), 3); }) == ErrorKind::NotClass2);
}

TEST_CASE("audit catches tampering")
{
    auto cert = std::get<CriticalityCertificate>(is_critical(cycle(5), 2));
    auto bad = cert;
    bad.per_edge_colorings[2].colors[3] = bad.per_edge_colorings[2].colors[4];
    CHECK_FALSE(audit_certificate(bad).empty());

    bad = cert;
    bad.per_edge_colorings.pop_back();
    CHECK_FALSE(audit_certificate(bad).empty());

    bad = cert;
    bad.class2_refutation = Refutation::None;
    CHECK_FALSE(audit_certificate(bad).empty());

    bad = cert;
    bad.graph = cycle(6);
    CHECK_FALSE(audit_certificate(bad).empty());

    bad = cert;
    bad.per_edge_colorings[0].colors[1] = 3;
    CHECK_FALSE(audit_certificate(bad).empty());
}

TEST_CASE("lemma bounds in integer arithmetic")
{
    // k = 5 needs 7|E| >= 15|V|: |V| = 14 needs |E| >= 30
    CHECK(check_lemma_bounds(certificate_for(5, graph_with(14, 30)), graph_with(14, 30)).status == LemmaStatus::Holds);
    CHECK(error_kind_of([] { check_lemma_bounds(certificate_for(5, graph_with(14, 29)), graph_with(14, 29)); })
            == ErrorKind::BoundViolated);

    // k = 6 needs 2|E| >= 5|V| + 3: |V| = 21 needs |E| >= 54
    auto v = check_lemma_bounds(certificate_for(6, graph_with(21, 54)), graph_with(21, 54));
    CHECK(v.status == LemmaStatus::Holds);
    CHECK(v.lhs == 108);
    CHECK(v.rhs == 108);
    CHECK(error_kind_of([] { check_lemma_bounds(certificate_for(6, graph_with(21, 53)), graph_with(21, 53)); })
            == ErrorKind::BoundViolated);

    CHECK(check_lemma_bounds(certificate_for(2, cycle(3)), cycle(3)).status == LemmaStatus::NotApplicable);
}

TEST_CASE("a synthetic 6-critical graph meets the edge bound tightly")
{
    auto g = CorpusStream(read_file(data_path("k7_minus_2k2.g6"))).read_all().at(0).graph;
    CHECK(g.vertex_count() == 7);
    CHECK(g.edge_count() == 19);
    auto cert = std::get<CriticalityCertificate>(is_critical(g, 6));
    CHECK(audit_certificate(cert).empty());
    auto v = check_lemma_bounds(cert, g);
    CHECK(v.status == LemmaStatus::Holds);
    CHECK(v.lhs == 38);
    CHECK(v.rhs == 38);
}

TEST_CASE("certificate JSON round trip")
{
    auto cert = std::get<CriticalityCertificate>(is_critical(load_plane("k4_subdivided.json").abstract_graph(), 3));
    auto back = certificate_from_json(certificate_to_json(cert));
    CHECK(back.k == cert.k);
    CHECK(back.graph == cert.graph);
    CHECK(back.class2_refutation == cert.class2_refutation);
    CHECK(back.per_edge_colorings == cert.per_edge_colorings);
    CHECK(audit_certificate(back).empty());
    CHECK(error_kind_of([] { certificate_from_json(nlohmann::json::object()); }) == ErrorKind::SchemaViolation);
}

TEST_CASE("criticality agrees with the brute-force oracle on small graphs")
{
    std::mt19937_64 rng(99);
    int certified = 0;
    for (int trial = 0 ; trial < 400 ; ++trial) {
        auto g = random_graph(3 + static_cast<int>(rng() % 5), 0.6, rng);
        if (! g.is_connected())
            continue;
        int k = g.max_degree();
        bool oracle = brute_force_chromatic_index(g) == k + 1;
        for (int e = 0 ; e < g.edge_count() && oracle ; ++e)
            oracle = brute_force_chromatic_index(g.without_edge(e)) <= k;
        auto verdict = is_critical(g, k);
        bool critical = std::holds_alternative<CriticalityCertificate>(verdict);
        CHECK(critical == oracle);
        if (critical) {
            ++certified;
            CHECK(audit_certificate(std::get<CriticalityCertificate>(verdict)).empty());
        }
    }
    CHECK(certified > 0);
}
