#include <critplane/discharge/engine.hpp>
#include <critplane/error.hpp>
#include <critplane/io_formats.hpp>

#include <iomanip>
#include <map>
#include <sstream>

using nlohmann::json;

namespace critplane
{
    namespace
    {
        using Bindings = std::map<std::string, int>;   // variable -> degree of the bound element

        auto evaluate(const Expr & e, const Bindings & env) -> Rational
        {
            switch (e.op) {
                case Expr::Op::Number:
                    return e.value;
                case Expr::Op::Degree:
                    return Rational(env.at(e.var));
                case Expr::Op::Neg:
                    return Rational(-evaluate(e.args[0], env));
                default:
                    break;
            }
            auto a = evaluate(e.args[0], env);
            auto b = evaluate(e.args[1], env);
            switch (e.op) {
                case Expr::Op::Add: return Rational(a + b);
                case Expr::Op::Sub: return Rational(a - b);
                case Expr::Op::Mul: return Rational(a * b);
                case Expr::Op::Div:
                    if (b == 0)
                        throw Error(ErrorKind::DivisionByZero,
                                std::to_string(e.pos.line) + ":" + std::to_string(e.pos.column) + ": divisor evaluates to 0");
                    return Rational(a / b);
                default:
                    throw Error(ErrorKind::Internal, "bad expression node");
            }
        }

        auto holds(const std::optional<Guard> & guard, const Bindings & env) -> bool
        {
            if (! guard)
                return true;
            auto a = evaluate(guard->lhs, env);
            auto b = evaluate(guard->rhs, env);
            switch (guard->cmp) {
                case Comparison::Eq: return a == b;
                case Comparison::Ge: return a >= b;
                case Comparison::Le: return a <= b;
                case Comparison::Gt: return a > b;
                case Comparison::Lt: return a < b;
            }
            return false;
        }

        auto element_name(const ElementRef & r) -> std::string
        {
            return (r.kind == ElementKind::Vertex ? "v" : "f") + std::to_string(r.id);
        }
    }

    auto ChargeLedger::total_initial() const -> Rational
    {
        Rational sum = 0;
        for (auto v : vertices)
            sum += vertex_initial[v];
        for (const auto & c : face_initial)
            sum += c;
        return sum;
    }

    auto ChargeLedger::total_final() const -> Rational
    {
        Rational sum = 0;
        for (auto v : vertices)
            sum += vertex_final[v];
        for (const auto & c : face_final)
            sum += c;
        return sum;
    }

    auto ChargeLedger::min_final() const -> std::pair<ElementRef, Rational>
    {
        std::pair<ElementRef, Rational> best{{ElementKind::Vertex, -1}, Rational(0)};
        bool first = true;
        auto consider = [&] (ElementRef r, const Rational & value) {
            if (first || value < best.second) {
                best = {r, value};
                first = false;
            }
        };
        for (auto v : vertices)
            consider({ElementKind::Vertex, v}, vertex_final[v]);
        for (std::size_t f = 0 ; f < face_final.size() ; ++f)
            consider({ElementKind::Face, static_cast<int>(f)}, face_final[f]);
        return best;
    }

    auto run_discharge(const PlaneGraph & g, const DischargeRuleSet & rs) -> ChargeLedger
    {
        if (! g.is_connected())
            throw Error(ErrorKind::Disconnected, "discharging needs a connected plane graph");

        ChargeLedger ledger;
        ledger.ruleset = rs.name;
        ledger.vertex_initial.assign(g.slot_count(), Rational(0));
        ledger.face_initial.assign(g.face_count(), Rational(0));

        for (VertexId v = 0 ; v < g.slot_count() ; ++v)
            if (g.has_vertex(v)) {
                ledger.vertices.push_back(v);
                ledger.vertex_initial[v] = evaluate(rs.vertex_charge.value, {{rs.vertex_charge.var, g.degree(v)}});
            }
        for (const auto & f : g.faces())
            ledger.face_initial[f.id] = evaluate(rs.face_charge.value, {{rs.face_charge.var, f.degree()}});

        for (const auto & rule : rs.rules) {
            if (rule.sender_kind == ElementKind::Vertex) {
                for (auto v : ledger.vertices) {
                    Bindings env{{rule.sender_var, g.degree(v)}};
                    if (! holds(rule.sender_guard, env))
                        continue;
                    for (int f : g.corner_faces(v)) {
                        env[rule.receiver_var] = g.face(f).degree();
                        if (holds(rule.receiver_guard, env))
                            ledger.transfers.push_back({rule.id, {ElementKind::Vertex, v}, {ElementKind::Face, f},
                                    evaluate(rule.amount, env)});
                    }
                }
            }
            else {
                for (const auto & f : g.faces()) {
                    Bindings env{{rule.sender_var, f.degree()}};
                    if (! holds(rule.sender_guard, env))
                        continue;
                    for (const auto & d : f.walk) {
                        env[rule.receiver_var] = g.degree(d.tail);
                        if (holds(rule.receiver_guard, env))
                            ledger.transfers.push_back({rule.id, {ElementKind::Face, f.id}, {ElementKind::Vertex, d.tail},
                                    evaluate(rule.amount, env)});
                    }
                }
            }
        }

        ledger.vertex_final = ledger.vertex_initial;
        ledger.face_final = ledger.face_initial;
        auto charge_of = [&] (const ElementRef & r) -> Rational & {
            return r.kind == ElementKind::Vertex ? ledger.vertex_final[r.id] : ledger.face_final[r.id];
        };
        for (const auto & t : ledger.transfers) {
            charge_of(t.sender) -= t.amount;
            charge_of(t.receiver) += t.amount;
        }
        return ledger;
    }

    auto ledger_to_json(const ChargeLedger & ledger, const PlaneGraph & g) -> json
    {
        json vertices = json::array();
        for (auto v : ledger.vertices)
            vertices.push_back({
                {"id", v},
                {"degree", g.degree(v)},
                {"initial", to_string(ledger.vertex_initial[v])},
                {"final", to_string(ledger.vertex_final[v])}
            });
        json faces = json::array();
        for (const auto & f : g.faces()) {
            json walk = json::array();
            for (const auto & d : f.walk)
                walk.push_back(d.tail);
            faces.push_back({
                {"id", f.id},
                {"degree", f.degree()},
                {"walk", walk},
                {"initial", to_string(ledger.face_initial[f.id])},
                {"final", to_string(ledger.face_final[f.id])}
            });
        }
        json transfers = json::array();
        for (const auto & t : ledger.transfers)
            transfers.push_back({
                {"rule", t.rule},
                {"from", element_name(t.sender)},
                {"to", element_name(t.receiver)},
                {"amount", to_string(t.amount)}
            });
        auto initial = ledger.total_initial();
        auto final_total = ledger.total_final();
        return json{
            {"ruleset", ledger.ruleset},
            {"graph", rotations_to_json(g)},
            {"vertices", vertices},
            {"faces", faces},
            {"transfers", transfers},
            {"total_initial", to_string(initial)},
            {"total_final", to_string(final_total)},
            {"conserved", initial == final_total}
        };
    }

    auto ledger_to_table(const ChargeLedger & ledger, const PlaneGraph & g) -> std::string
    {
        std::ostringstream out;
        out << "ruleset " << ledger.ruleset << "\n";
        out << std::left << std::setw(10) << "element" << std::setw(8) << "degree"
            << std::setw(14) << "initial" << "final\n";
        for (auto v : ledger.vertices)
            out << std::setw(10) << element_name({ElementKind::Vertex, v}) << std::setw(8) << g.degree(v)
                << std::setw(14) << to_string(ledger.vertex_initial[v]) << to_string(ledger.vertex_final[v]) << "\n";
        for (const auto & f : g.faces())
            out << std::setw(10) << element_name({ElementKind::Face, f.id}) << std::setw(8) << f.degree()
                << std::setw(14) << to_string(ledger.face_initial[f.id]) << to_string(ledger.face_final[f.id]) << "\n";
        auto initial = ledger.total_initial();
        auto final_total = ledger.total_final();
        out << "transfers " << ledger.transfers.size() << "\n";
        out << "total initial " << to_string(initial) << ", total final " << to_string(final_total)
            << (initial == final_total ? " (conserved)" : " (NOT conserved)") << "\n";
        return out.str();
    }
}
