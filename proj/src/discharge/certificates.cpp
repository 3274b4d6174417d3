#include <critplane/discharge/certificates.hpp>
#include <critplane/error.hpp>
#include <critplane/io_formats.hpp>

#include "builtin_rules.hpp"

using nlohmann::json;

namespace critplane
{
    auto theorem1_ruleset() -> const DischargeRuleSet &
    {
        static const auto rs = parse_ruleset(builtin::theorem1_dsl);
        return rs;
    }

    auto theorem2_ruleset() -> const DischargeRuleSet &
    {
        static const auto rs = parse_ruleset(builtin::theorem2_dsl);
        return rs;
    }

    auto to_string(CertificateStatus status) -> std::string_view
    {
        switch (status) {
            case CertificateStatus::PremiseFails:    return "PremiseFails";
            case CertificateStatus::NotSixCritical:  return "NotSixCritical";
            case CertificateStatus::NotFiveCritical: return "NotFiveCritical";
            case CertificateStatus::MaxDegreeAboveFive: return "MaxDegreeAboveFive";
        }
        return "Unknown";
    }

    auto theorem2_vertex_bound(int triangles) -> Rational
    {
        Rational bound = make_rational(2, 7);
        bound += Rational(triangles * make_rational(1, 5));
        bound -= Rational(triangles * make_rational(1, 3));
        return bound;
    }

    auto max_incident_3faces(const PlaneGraph & g) -> std::pair<VertexId, int>
    {
        std::pair<VertexId, int> best{-1, -1};
        for (VertexId v = 0 ; v < g.slot_count() ; ++v)
            if (g.has_vertex(v)) {
                int c = incident_3face_count(g, v);
                if (c > best.second)
                    best = {v, c};
            }
        return best;
    }

    auto find_3face_with_small_neighbour(const PlaneGraph & g) -> std::optional<std::pair<int, int>>
    {
        for (const auto & f : g.faces()) {
            if (f.degree() != 3)
                continue;
            for (const auto & d : f.walk) {
                int across = g.face_of(d.reversed());
                if (across != f.id && g.face(across).degree() < 5)
                    return std::pair{f.id, across};
            }
        }
        return std::nullopt;
    }

    namespace
    {
        void require_applicable(const PlaneGraph & g)
        {
            if (! g.is_connected())
                throw Error(ErrorKind::Disconnected, "certificates need a connected plane graph");
            if (g.vertex_count() < 3)
                throw Error(ErrorKind::DegenerateGraph,
                        "fewer than 3 vertices: faces of degree below 3 fall outside the discharging argument");
        }

        auto check_nonnegative(const ChargeLedger & ledger) -> void
        {
            auto [where, value] = ledger.min_final();
            if (where.id >= 0 && value < 0)
                throw Error(ErrorKind::NonNegativityFailure,
                        std::string(where.kind == ElementKind::Vertex ? "vertex " : "face ") + std::to_string(where.id)
                        + " ends with charge " + to_string(value));
        }

        auto check_total(const ChargeLedger & ledger, const Rational & expected) -> Rational
        {
            auto initial = ledger.total_initial();
            auto final_total = ledger.total_final();
            if (initial != final_total)
                throw Error(ErrorKind::Internal, "discharge changed the charge sum");
            if (final_total != expected)
                throw Error(ErrorKind::Internal,
                        "ledger total " + to_string(final_total) + " differs from the count-based value " + to_string(expected));
            return final_total;
        }

        /// |V| * vertex_charge + 2|E| - 4|F|, computed from counts alone.
        auto euler_total(const PlaneGraph & g, const Rational & vertex_charge) -> Rational
        {
            Rational total = vertex_charge * g.vertex_count();
            total += 2 * g.edge_count() - 4 * g.face_count();
            return total;
        }
    }

    auto theorem1_certificate(const PlaneGraph & g) -> TheoremVerdict
    {
        require_applicable(g);
        TheoremVerdict verdict;
        verdict.theorem = 1;
        verdict.premise = "every vertex is incident to at most three 3-faces";
        verdict.contradiction_bound = -11;
        verdict.relies_on = "every 6-critical graph satisfies 2|E| >= 5|V| + 3";

        auto [vertex, count] = max_incident_3faces(g);
        if (count > 3) {
            verdict.status = CertificateStatus::PremiseFails;
            verdict.witness_vertex = vertex;
            verdict.witness_count = count;
            return verdict;
        }

        auto ledger = run_discharge(g, theorem1_ruleset());
        check_nonnegative(ledger);
        verdict.total = check_total(ledger, euler_total(g, 1));
        verdict.status = CertificateStatus::NotSixCritical;
        verdict.ledger = std::move(ledger);
        return verdict;
    }

    auto theorem2_certificate(const PlaneGraph & g) -> TheoremVerdict
    {
        require_applicable(g);
        TheoremVerdict verdict;
        verdict.theorem = 2;
        verdict.premise = "every 3-face is adjacent only to faces of degree at least 5";
        verdict.contradiction_bound = -8;
        verdict.relies_on = "every 5-critical graph satisfies 7|E| >= 15|V|";

        if (auto pair = find_3face_with_small_neighbour(g)) {
            verdict.status = CertificateStatus::PremiseFails;
            verdict.witness_faces = pair;
            return verdict;
        }

        for (VertexId v = 0 ; v < g.slot_count() ; ++v)
            if (g.has_vertex(v) && g.degree(v) > 5) {
                verdict.status = CertificateStatus::MaxDegreeAboveFive;
                verdict.witness_vertex = v;
                verdict.witness_count = g.degree(v);
                verdict.relies_on = "a 5-critical graph has maximum degree 5";
                return verdict;
            }

        // consequences of the premise that the vertex case analysis relies on
        std::vector<int> triangles(g.slot_count(), 0);
        for (VertexId v = 0 ; v < g.slot_count() ; ++v) {
            if (! g.has_vertex(v))
                continue;
            int small = 0, large = 0;
            for (int f : g.corner_faces(v)) {
                if (g.face(f).degree() == 3)
                    ++small;
                else if (g.face(f).degree() >= 5)
                    ++large;
            }
            triangles[v] = small;
            if (small > 2)
                throw Error(ErrorKind::DerivedFactFailure,
                        "vertex " + std::to_string(v) + " meets " + std::to_string(small) + " 3-faces");
            if (large < small)
                throw Error(ErrorKind::DerivedFactFailure,
                        "vertex " + std::to_string(v) + " meets " + std::to_string(small) + " 3-faces but only "
                        + std::to_string(large) + " faces of degree at least 5");
        }

        auto ledger = run_discharge(g, theorem2_ruleset());
        check_nonnegative(ledger);
        for (auto v : ledger.vertices) {
            const auto & final_charge = ledger.vertex_final[v];
            if (final_charge < theorem2_vertex_bound(triangles[v]))
                throw Error(ErrorKind::NonNegativityFailure,
                        "vertex " + std::to_string(v) + " ends below its case bound " + to_string(theorem2_vertex_bound(triangles[v])));
            auto & slot = verdict.min_vertex_final_by_triangles[triangles[v]];
            if (! slot || final_charge < *slot)
                slot = final_charge;
        }
        verdict.total = check_total(ledger, euler_total(g, make_rational(2, 7)));
        verdict.status = CertificateStatus::NotFiveCritical;
        verdict.ledger = std::move(ledger);
        return verdict;
    }

    auto verdict_to_json(const TheoremVerdict & verdict, bool include_ledger, const PlaneGraph & g) -> json
    {
        json out{
            {"theorem", verdict.theorem},
            {"verdict", to_string(verdict.status)},
            {"premise", verdict.premise}
        };
        if (verdict.status == CertificateStatus::MaxDegreeAboveFive) {
            out["witness"] = {{"vertex", *verdict.witness_vertex}, {"degree", verdict.witness_count}};
            out["relies_on"] = verdict.relies_on;
            return out;
        }
        if (verdict.status == CertificateStatus::PremiseFails) {
            if (verdict.witness_vertex)
                out["witness"] = {{"vertex", *verdict.witness_vertex}, {"incident_3faces", verdict.witness_count}};
            if (verdict.witness_faces)
                out["witness"] = {
                    {"face", verdict.witness_faces->first},
                    {"adjacent_face", verdict.witness_faces->second},
                    {"adjacent_degree", g.face(verdict.witness_faces->second).degree()}
                };
            return out;
        }
        out["total"] = to_string(verdict.total);
        out["contradiction_bound"] = to_string(verdict.contradiction_bound);
        out["relies_on"] = verdict.relies_on;
        out["all_final_charges_nonnegative"] = true;
        if (verdict.theorem == 2) {
            json cases = json::object();
            for (int n = 0 ; n < 3 ; ++n)
                if (verdict.min_vertex_final_by_triangles[n])
                    cases[std::to_string(n)] = {
                        {"min_final", to_string(*verdict.min_vertex_final_by_triangles[n])},
                        {"bound", to_string(theorem2_vertex_bound(n))}
                    };
            out["vertex_cases"] = cases;
        }
        if (include_ledger && verdict.ledger)
            out["ledger"] = ledger_to_json(*verdict.ledger, g);
        return out;
    }
}
