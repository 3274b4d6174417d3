#pragma once

#include <critplane/error.hpp>
#include <critplane/rational.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace critplane
{
    enum class ElementKind
    {
        Vertex,
        Face
    };

    auto to_string(ElementKind kind) -> std::string_view;

    struct SourcePos
    {
        int line = 0;
        int column = 0;
    };

    /// Arithmetic over integer literals and element degrees. Positions are
    /// carried for diagnostics and ignored by ==.
    struct Expr
    {
        enum class Op
        {
            Number,
            Degree,
            Add,
            Sub,
            Mul,
            Div,
            Neg
        };

        Op op = Op::Number;
        Rational value;             // Number
        std::string var;            // Degree
        std::vector<Expr> args;     // operands
        SourcePos pos;

        auto operator== (const Expr & other) const -> bool;
    };

    enum class Comparison
    {
        Eq,
        Ge,
        Le,
        Gt,
        Lt
    };

    struct Guard
    {
        Expr lhs;
        Comparison cmp = Comparison::Eq;
        Expr rhs;

        auto operator== (const Guard &) const -> bool = default;
    };

    struct ChargeStatement
    {
        ElementKind kind = ElementKind::Vertex;
        std::string var;
        Expr value;

        auto operator== (const ChargeStatement &) const -> bool = default;
    };

    /// "from <sender> [where ...] to each incident <receiver> [where ...] send <amount>".
    /// Fires once per vertex-face incidence along facial walks.
    struct TransferRule
    {
        std::string id;
        ElementKind sender_kind = ElementKind::Vertex;
        std::string sender_var;
        std::optional<Guard> sender_guard;
        ElementKind receiver_kind = ElementKind::Face;
        std::string receiver_var;
        std::optional<Guard> receiver_guard;
        Expr amount;

        auto operator== (const TransferRule &) const -> bool = default;
    };

    struct DischargeRuleSet
    {
        std::string name;
        ChargeStatement vertex_charge;
        ChargeStatement face_charge;
        std::vector<TransferRule> rules;

        auto operator== (const DischargeRuleSet &) const -> bool = default;
    };

    /// LexError, ParseError or TypeError with a 1-based source position.
    class DslError : public Error
    {
        public:
            DslError(ErrorKind kind, SourcePos pos, const std::string & message);

            auto pos() const noexcept -> SourcePos { return _pos; }

        private:
            SourcePos _pos;
    };

    /// Grammar:
    ///
    ///     ruleset := "ruleset" STRING stmt*
    ///     stmt    := "charge" ("vertex"|"face") IDENT ":=" expr
    ///              | "rule" IDENT ":" "from" kind IDENT guard? "to" "each" "incident" kind IDENT guard? "send" expr
    ///     guard   := "where" expr cmp expr
    ///     cmp     := "==" | ">=" | "<=" | ">" | "<"
    ///     expr    := integers, "deg(" IDENT ")", + - * / and parentheses
    ///
    /// '#' starts a comment running to the end of the line. Both charge
    /// statements are required; a divisor that is a constant zero is rejected.
    auto parse_ruleset(std::string_view text) -> DischargeRuleSet;

    /// Canonical text; parse_ruleset(print_ruleset(rs)) == rs.
    auto print_ruleset(const DischargeRuleSet & rs) -> std::string;
    auto print_expr(const Expr & e) -> std::string;
}
