#pragma once

#include <critplane/discharge/dsl.hpp>
#include <critplane/discharge/engine.hpp>
#include <critplane/plane_graph.hpp>
#include <critplane/rational.hpp>

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace critplane
{
    /// The shipped rule sets (rules/theorem1.dsl, rules/theorem2.dsl), compiled in.
    auto theorem1_ruleset() -> const DischargeRuleSet &;
    auto theorem2_ruleset() -> const DischargeRuleSet &;

    enum class CertificateStatus
    {
        PremiseFails,
        NotSixCritical,
        NotFiveCritical,
        MaxDegreeAboveFive      // second argument only: premise holds but some vertex has degree > 5
    };

    auto to_string(CertificateStatus status) -> std::string_view;

    /// Outcome of running one of the two discharging arguments on a plane graph.
    ///
    /// PremiseFails carries a witness. Otherwise the discharge has been run,
    /// every final charge checked nonnegative, and `total` is the (conserved)
    /// charge sum. A critical graph of the relevant degree would need
    /// total <= contradiction_bound by the external edge bound in `relies_on`,
    /// so the graph is not critical. The verdict is conditional on that bound.
    struct TheoremVerdict
    {
        int theorem = 0;
        CertificateStatus status = CertificateStatus::PremiseFails;
        std::string premise;
        std::optional<VertexId> witness_vertex;
        std::optional<std::pair<int, int>> witness_faces;   // (3-face, adjacent face of degree < 5)
        int witness_count = 0;
        Rational total;
        Rational contradiction_bound;
        std::string relies_on;
        std::optional<ChargeLedger> ledger;

        /// Theorem 2 only: smallest vertex final charge among vertices meeting
        /// n = 0, 1, 2 three-faces (unset when no such vertex exists).
        std::array<std::optional<Rational>, 3> min_vertex_final_by_triangles;
    };

    /// Throws Disconnected, DegenerateGraph (fewer than 3 vertices, where
    /// faces of degree below 3 exist), NonNegativityFailure.
    auto theorem1_certificate(const PlaneGraph & g) -> TheoremVerdict;

    /// The derived facts (at most two 3-faces per vertex, a 5+-face at every
    /// vertex on a 3-face) follow from the premise only when every degree is
    /// at most 5, as in a 5-critical graph. A premise-satisfying graph with a
    /// larger degree gets MaxDegreeAboveFive with the vertex as witness and no
    /// discharge. Also throws DerivedFactFailure.
    auto theorem2_certificate(const PlaneGraph & g) -> TheoremVerdict;

    /// Lower bound on the final charge of a vertex meeting n three-faces under
    /// the second rule set (n = 0, 1, 2): 2/7, 2/7 + 1/5 - 1/3, 2/7 + 2/5 - 2/3.
    auto theorem2_vertex_bound(int triangles) -> Rational;

    /// Premise checks on their own (no discharge).
    auto max_incident_3faces(const PlaneGraph & g) -> std::pair<VertexId, int>;
    auto find_3face_with_small_neighbour(const PlaneGraph & g) -> std::optional<std::pair<int, int>>;

    auto verdict_to_json(const TheoremVerdict & verdict, bool include_ledger, const PlaneGraph & g) -> nlohmann::json;
}
