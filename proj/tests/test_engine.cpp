#include <critplane/discharge/certificates.hpp>
#include <critplane/discharge/engine.hpp>

#include "oracles.hpp"
#include "plane_enum.hpp"

#include <doctest.h>

using namespace critplane;
using namespace critplane::testing;

namespace
{
    auto q(long n, long d = 1) -> Rational { return make_rational(n, d); }

    const char * identity_rules = "ruleset \"idle\"\ncharge vertex v := deg(v)\ncharge face f := 1\n";
}

TEST_CASE("dodecahedron under the second rule set")
{
    auto g = load_plane("dodecahedron.json");
    auto ledger = run_discharge(g, theorem2_ruleset());
    CHECK(ledger.total_initial() == q(124, 7));
    CHECK(ledger.total_final() == q(124, 7));
    for (auto v : ledger.vertices)
        CHECK(ledger.vertex_final[v] == q(31, 35));
    for (const auto & c : ledger.face_final)
        CHECK(c == 0);
    CHECK(ledger.transfers.size() == 60);
}

TEST_CASE("triangle under the first rule set")
{
    auto g = load_plane("triangle.json");
    auto ledger = run_discharge(g, theorem1_ruleset());
    for (int v = 0 ; v < 3 ; ++v)
        CHECK(ledger.vertex_final[v] == q(1, 3));
    for (const auto & c : ledger.face_final)
        CHECK(c == 0);
    CHECK(ledger.total_final() == 1);
    auto [where, value] = ledger.min_final();
    CHECK(value == 0);
    CHECK(where.kind == ElementKind::Face);
}

TEST_CASE("a rule set without rules leaves charges alone")
{
    auto g = load_plane("cube.json");
    auto ledger = run_discharge(g, parse_ruleset(identity_rules));
    CHECK(ledger.transfers.empty());
    CHECK(ledger.vertex_final == ledger.vertex_initial);
    CHECK(ledger.face_final == ledger.face_initial);
    CHECK(ledger.total_final() == 8 * 3 + 6);
}

TEST_CASE("runtime failures")
{
    auto rs = parse_ruleset("ruleset \"d\"\ncharge vertex v := 1\ncharge face f := 0\n"
                            "rule R: from vertex v to each incident face f send 1 / (deg(f) - 3)\n");
    CHECK(error_kind_of([&] { run_discharge(load_plane("triangle.json"), rs); }) == ErrorKind::DivisionByZero);
    auto split = PlaneGraph::from_rotations(4, {{1}, {0}, {3}, {2}});
    CHECK(error_kind_of([&] { run_discharge(split, theorem1_ruleset()); }) == ErrorKind::Disconnected);
}

TEST_CASE("deleted vertex slots carry no charge")
{
    auto g = delete_vertex(load_plane("octahedron.json"), 0);
    auto ledger = run_discharge(g, theorem1_ruleset());
    CHECK(ledger.vertices.size() == 5);
    CHECK(ledger.vertex_final[0] == 0);
    CHECK(ledger.total_final() == q(5) + static_cast<long>(face_excess_sum(g)));
}

TEST_CASE("finals match a direct corner count and charge is conserved")
{
    auto senders = parse_ruleset("ruleset \"mix\"\ncharge vertex v := deg(v) - 6\ncharge face f := 2 * deg(f) - 6\n"
                                 "rule A: from vertex v where deg(v) >= 3 to each incident face f send deg(v) / 7\n"
                                 "rule B: from face f to each incident vertex v where deg(v) < 4 send 1 / deg(f)\n");
    for (int n = 3 ; n <= 7 ; ++n)
        for (const auto & rot : connected_plane_graphs(n)) {
            auto g = PlaneGraph::from_rotations(n, rot);
            const Rational euler_count = static_cast<long>(n + face_excess_sum(g));

            auto one = run_discharge(g, theorem1_ruleset());
            REQUIRE(one.total_initial() == euler_count);
            REQUIRE(one.total_final() == euler_count);
            for (int v = 0 ; v < n ; ++v)
                REQUIRE(one.vertex_final[v] == 1 - q(incident_3face_count(g, v), 3));
            for (const auto & f : g.faces())
                REQUIRE(one.face_final[f.id] == (f.degree() == 3 ? 0 : f.degree() - 4));

            auto two = run_discharge(g, theorem2_ruleset());
            REQUIRE(two.total_final() == q(2, 7) * n + static_cast<long>(face_excess_sum(g)));
            for (int v = 0 ; v < n ; ++v) {
                Rational expected = q(2, 7);
                for (int face : g.corner_faces(v)) {
                    int d = g.face(face).degree();
                    if (d == 3)
                        expected -= q(1, 3);
                    else if (d >= 5)
                        expected += q(d - 4, d);
                }
                REQUIRE(two.vertex_final[v] == expected);
            }
            for (const auto & f : g.faces())
                REQUIRE(two.face_final[f.id] == 0);

            auto mixed = run_discharge(g, senders);
            REQUIRE(mixed.total_final() == mixed.total_initial());
        }
}

TEST_CASE("ledger serialisation")
{
    auto g = load_plane("k4.json");
    auto ledger = run_discharge(g, theorem1_ruleset());
    auto j = ledger_to_json(ledger, g);
    CHECK(j.at("conserved").get<bool>());
    CHECK(rational_from_string(j.at("total_final").get<std::string>()) == ledger.total_final());
    auto table = ledger_to_table(ledger, g);
    CHECK(table.find("total") != std::string::npos);
}
