#pragma once

#include <critplane/discharge/dsl.hpp>
#include <critplane/plane_graph.hpp>
#include <critplane/rational.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace critplane
{
    struct ElementRef
    {
        ElementKind kind = ElementKind::Vertex;
        int id = 0;

        auto operator== (const ElementRef &) const -> bool = default;
    };

    struct Transfer
    {
        std::string rule;
        ElementRef sender;
        ElementRef receiver;
        Rational amount;
    };

    /// Charges indexed by vertex slot (deleted slots stay 0) and by face id.
    struct ChargeLedger
    {
        std::string ruleset;
        std::vector<VertexId> vertices;         // live vertex ids
        std::vector<Rational> vertex_initial;
        std::vector<Rational> vertex_final;
        std::vector<Rational> face_initial;
        std::vector<Rational> face_final;
        std::vector<Transfer> transfers;

        auto total_initial() const -> Rational;
        auto total_final() const -> Rational;

        /// Smallest final charge and where it sits; nullopt-like {-1} when empty.
        auto min_final() const -> std::pair<ElementRef, Rational>;
    };

    /// One simultaneous round: initial charges from the charge statements,
    /// every rule evaluated on the undischarged structure, final = initial +
    /// inflow - outflow. Throws Disconnected, DivisionByZero.
    auto run_discharge(const PlaneGraph & g, const DischargeRuleSet & rs) -> ChargeLedger;

    auto ledger_to_json(const ChargeLedger & ledger, const PlaneGraph & g) -> nlohmann::json;

    /// Human-readable table: one row per element, then totals.
    auto ledger_to_table(const ChargeLedger & ledger, const PlaneGraph & g) -> std::string;
}
