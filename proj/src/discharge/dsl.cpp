#include <critplane/discharge/dsl.hpp>

#include <array>
#include <cctype>
#include <map>
#include <set>

namespace critplane
{
    auto to_string(ElementKind kind) -> std::string_view
    {
        return kind == ElementKind::Vertex ? "vertex" : "face";
    }

    auto Expr::operator== (const Expr & other) const -> bool
    {
        if (op != other.op)
            return false;
        switch (op) {
            case Op::Number: return value == other.value;
            case Op::Degree: return var == other.var;
            default:         return args == other.args;
        }
    }

    DslError::DslError(ErrorKind kind, SourcePos pos, const std::string & message) :
        Error(kind, std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        _pos(pos)
    {
    }

    namespace
    {
        enum class Tok
        {
            Ident,
            Keyword,
            Integer,
            String,
            Assign,     // :=
            Colon,
            LParen,
            RParen,
            Plus,
            Minus,
            Star,
            Slash,
            Cmp,
            End
        };

        struct Token
        {
            Tok type = Tok::End;
            std::string text;
            SourcePos pos;
        };

        constexpr std::array keywords{
            "ruleset", "charge", "vertex", "face", "rule", "from", "to", "each", "incident", "where", "send", "deg"
        };

        auto is_keyword(std::string_view word) -> bool
        {
            for (auto k : keywords)
                if (word == k)
                    return true;
            return false;
        }

        auto describe(const Token & t) -> std::string
        {
            if (t.type == Tok::End)
                return "end of input";
            if (t.type == Tok::String)
                return "string \"" + t.text + "\"";
            return "'" + t.text + "'";
        }

        auto lex(std::string_view text) -> std::vector<Token>
        {
            std::vector<Token> tokens;
            int line = 1, column = 1;
            std::size_t i = 0;

            auto advance = [&] {
                if (text[i] == '\n') {
                    ++line;
                    column = 1;
                }
                else
                    ++column;
                ++i;
            };

            while (i < text.size()) {
                char c = text[i];
                if (c == '#') {
                    while (i < text.size() && text[i] != '\n')
                        advance();
                    continue;
                }
                if (std::isspace(static_cast<unsigned char>(c))) {
                    advance();
                    continue;
                }

                Token t;
                t.pos = {line, column};
                if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                        t.text.push_back(text[i]);
                        advance();
                    }
                    t.type = is_keyword(t.text) ? Tok::Keyword : Tok::Ident;
                }
                else if (std::isdigit(static_cast<unsigned char>(c))) {
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                        t.text.push_back(text[i]);
                        advance();
                    }
                    if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '.'))
                        throw DslError(ErrorKind::LexError, {line, column},
                                std::string("unexpected '") + text[i] + "' after number");
                    t.type = Tok::Integer;
                }
                else if (c == '"') {
                    advance();
                    while (true) {
                        if (i >= text.size() || text[i] == '\n')
                            throw DslError(ErrorKind::LexError, t.pos, "unterminated string");
                        if (text[i] == '"') {
                            advance();
                            break;
                        }
                        if (text[i] == '\\') {
                            advance();
                            if (i >= text.size() || (text[i] != '"' && text[i] != '\\'))
                                throw DslError(ErrorKind::LexError, {line, column}, "unknown escape in string");
                        }
                        t.text.push_back(text[i]);
                        advance();
                    }
                    t.type = Tok::String;
                }
                else {
                    auto next = i + 1 < text.size() ? text[i + 1] : '\0';
                    auto two = [&] (Tok type, std::string s) {
                        t.type = type;
                        t.text = std::move(s);
                        advance();
                        advance();
                    };
                    auto one = [&] (Tok type) {
                        t.type = type;
                        t.text = std::string(1, c);
                        advance();
                    };
                    switch (c) {
                        case ':': next == '=' ? two(Tok::Assign, ":=") : one(Tok::Colon); break;
                        case '(': one(Tok::LParen); break;
                        case ')': one(Tok::RParen); break;
                        case '+': one(Tok::Plus); break;
                        case '-': one(Tok::Minus); break;
                        case '*': one(Tok::Star); break;
                        case '/': one(Tok::Slash); break;
                        case '=':
                            if (next != '=')
                                throw DslError(ErrorKind::LexError, t.pos, "expected '==' or ':='");
                            two(Tok::Cmp, "==");
                            break;
                        case '>':
                        case '<':
                            next == '=' ? two(Tok::Cmp, std::string(1, c) + "=") : one(Tok::Cmp);
                            break;
                        default:
                            throw DslError(ErrorKind::LexError, t.pos, std::string("unexpected character '") + c + "'");
                    }
                }
                tokens.push_back(std::move(t));
            }
            tokens.push_back(Token{Tok::End, "", {line, column}});
            return tokens;
        }

        /// Folds an expression without degrees; nullopt if it mentions one.
        auto fold_constant(const Expr & e) -> std::optional<Rational>
        {
            switch (e.op) {
                case Expr::Op::Number: return e.value;
                case Expr::Op::Degree: return std::nullopt;
                case Expr::Op::Neg: {
                    auto x = fold_constant(e.args[0]);
                    if (! x)
                        return std::nullopt;
                    return Rational(-*x);
                }
                default: break;
            }
            auto a = fold_constant(e.args[0]);
            auto b = fold_constant(e.args[1]);
            if (! a || ! b)
                return std::nullopt;
            switch (e.op) {
                case Expr::Op::Add: return Rational(*a + *b);
                case Expr::Op::Sub: return Rational(*a - *b);
                case Expr::Op::Mul: return Rational(*a * *b);
                case Expr::Op::Div:
                    if (*b == 0)
                        return std::nullopt;
                    return Rational(*a / *b);
                default: return std::nullopt;
            }
        }

        using Scope = std::map<std::string, ElementKind>;

        class Parser
        {
            public:
                explicit Parser(std::vector<Token> tokens) : _tokens(std::move(tokens)) {}

                auto ruleset() -> DischargeRuleSet
                {
                    DischargeRuleSet rs;
                    auto head = peek().pos;
                    expect_keyword("ruleset");
                    rs.name = expect(Tok::String, "a quoted rule set name").text;

                    bool have_vertex = false, have_face = false;
                    std::set<std::string> rule_ids;
                    while (peek().type != Tok::End) {
                        if (at_keyword("charge")) {
                            auto at = peek().pos;
                            auto stmt = charge();
                            bool & have = stmt.kind == ElementKind::Vertex ? have_vertex : have_face;
                            if (have)
                                throw DslError(ErrorKind::TypeError, at,
                                        "second charge statement for " + std::string(to_string(stmt.kind)));
                            have = true;
                            (stmt.kind == ElementKind::Vertex ? rs.vertex_charge : rs.face_charge) = std::move(stmt);
                        }
                        else if (at_keyword("rule")) {
                            auto at = peek().pos;
                            auto r = rule();
                            if (! rule_ids.insert(r.id).second)
                                throw DslError(ErrorKind::TypeError, at, "duplicate rule id '" + r.id + "'");
                            rs.rules.push_back(std::move(r));
                        }
                        else
                            throw DslError(ErrorKind::ParseError, peek().pos,
                                    "expected 'charge' or 'rule', found " + describe(peek()));
                    }
                    if (! have_vertex)
                        throw DslError(ErrorKind::TypeError, head, "missing 'charge vertex' statement");
                    if (! have_face)
                        throw DslError(ErrorKind::TypeError, head, "missing 'charge face' statement");
                    return rs;
                }

            private:
                auto peek() const -> const Token & { return _tokens[_at]; }
                auto take() -> const Token & { return _tokens[_at < _tokens.size() - 1 ? _at++ : _at]; }

                auto at_keyword(std::string_view word) const -> bool
                {
                    return peek().type == Tok::Keyword && peek().text == word;
                }

                auto expect(Tok type, const std::string & what) -> const Token &
                {
                    if (peek().type != type)
                        throw DslError(ErrorKind::ParseError, peek().pos, "expected " + what + ", found " + describe(peek()));
                    return take();
                }

                void expect_keyword(std::string_view word)
                {
                    if (! at_keyword(word))
                        throw DslError(ErrorKind::ParseError, peek().pos,
                                "expected '" + std::string(word) + "', found " + describe(peek()));
                    take();
                }

                auto kind() -> ElementKind
                {
                    if (at_keyword("vertex")) {
                        take();
                        return ElementKind::Vertex;
                    }
                    if (at_keyword("face")) {
                        take();
                        return ElementKind::Face;
                    }
                    throw DslError(ErrorKind::ParseError, peek().pos, "expected 'vertex' or 'face', found " + describe(peek()));
                }

                auto charge() -> ChargeStatement
                {
                    expect_keyword("charge");
                    ChargeStatement stmt;
                    stmt.kind = kind();
                    stmt.var = expect(Tok::Ident, "a variable name").text;
                    expect(Tok::Assign, "':='");
                    stmt.value = expr(Scope{{stmt.var, stmt.kind}});
                    return stmt;
                }

                auto rule() -> TransferRule
                {
                    expect_keyword("rule");
                    TransferRule r;
                    r.id = expect(Tok::Ident, "a rule id").text;
                    expect(Tok::Colon, "':'");
                    expect_keyword("from");
                    r.sender_kind = kind();
                    r.sender_var = expect(Tok::Ident, "a variable name").text;
                    Scope sender{{r.sender_var, r.sender_kind}};
                    if (at_keyword("where"))
                        r.sender_guard = guard(sender);

                    expect_keyword("to");
                    expect_keyword("each");
                    expect_keyword("incident");
                    auto receiver_pos = peek().pos;
                    r.receiver_kind = kind();
                    if (r.receiver_kind == r.sender_kind)
                        throw DslError(ErrorKind::TypeError, receiver_pos,
                                "incidence links a vertex and a face; both ends are " + std::string(to_string(r.sender_kind)));
                    auto var_pos = peek().pos;
                    r.receiver_var = expect(Tok::Ident, "a variable name").text;
                    if (r.receiver_var == r.sender_var)
                        throw DslError(ErrorKind::TypeError, var_pos, "variable '" + r.receiver_var + "' is already bound");
                    Scope both = sender;
                    both[r.receiver_var] = r.receiver_kind;
                    if (at_keyword("where"))
                        r.receiver_guard = guard(both);

                    expect_keyword("send");
                    r.amount = expr(both);
                    return r;
                }

                auto guard(const Scope & scope) -> Guard
                {
                    expect_keyword("where");
                    Guard g;
                    g.lhs = expr(scope);
                    auto & op = expect(Tok::Cmp, "a comparison (==, >=, <=, >, <)");
                    if (op.text == "==") g.cmp = Comparison::Eq;
                    else if (op.text == ">=") g.cmp = Comparison::Ge;
                    else if (op.text == "<=") g.cmp = Comparison::Le;
                    else if (op.text == ">") g.cmp = Comparison::Gt;
                    else g.cmp = Comparison::Lt;
                    g.rhs = expr(scope);
                    return g;
                }

                auto expr(const Scope & scope) -> Expr
                {
                    auto lhs = term(scope);
                    while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
                        auto & op = take();
                        Expr node;
                        node.op = op.type == Tok::Plus ? Expr::Op::Add : Expr::Op::Sub;
                        node.pos = op.pos;
                        node.args.push_back(std::move(lhs));
                        node.args.push_back(term(scope));
                        lhs = std::move(node);
                    }
                    return lhs;
                }

                auto term(const Scope & scope) -> Expr
                {
                    auto lhs = unary(scope);
                    while (peek().type == Tok::Star || peek().type == Tok::Slash) {
                        auto & op = take();
                        Expr node;
                        node.op = op.type == Tok::Star ? Expr::Op::Mul : Expr::Op::Div;
                        node.pos = op.pos;
                        auto divisor_pos = peek().pos;
                        node.args.push_back(std::move(lhs));
                        node.args.push_back(unary(scope));
                        if (node.op == Expr::Op::Div) {
                            auto folded = fold_constant(node.args[1]);
                            if (folded && *folded == 0)
                                throw DslError(ErrorKind::ParseError, divisor_pos, "division by zero");
                        }
                        lhs = std::move(node);
                    }
                    return lhs;
                }

                auto unary(const Scope & scope) -> Expr
                {
                    if (peek().type == Tok::Minus) {
                        Expr node;
                        node.op = Expr::Op::Neg;
                        node.pos = take().pos;
                        node.args.push_back(unary(scope));
                        return node;
                    }
                    return primary(scope);
                }

                auto primary(const Scope & scope) -> Expr
                {
                    const auto & t = peek();
                    Expr node;
                    node.pos = t.pos;
                    if (t.type == Tok::Integer) {
                        node.op = Expr::Op::Number;
                        node.value = Rational(mpz_class(t.text));
                        take();
                        return node;
                    }
                    if (t.type == Tok::LParen) {
                        take();
                        auto inner = expr(scope);
                        expect(Tok::RParen, "')'");
                        return inner;
                    }
                    if (t.type == Tok::Keyword && t.text == "deg") {
                        take();
                        expect(Tok::LParen, "'(' after deg");
                        const auto & name = peek();
                        if (name.type != Tok::Ident)
                            throw DslError(ErrorKind::ParseError, name.pos, "expected a variable name, found " + describe(name));
                        if (! scope.contains(name.text))
                            throw DslError(ErrorKind::TypeError, name.pos, "unbound variable '" + name.text + "'");
                        node.op = Expr::Op::Degree;
                        node.var = take().text;
                        expect(Tok::RParen, "')'");
                        return node;
                    }
                    if (t.type == Tok::Ident)
                        throw DslError(ErrorKind::TypeError, t.pos,
                                "bare variable '" + t.text + "' has no value; use deg(" + t.text + ")");
                    throw DslError(ErrorKind::ParseError, t.pos, "expected an expression, found " + describe(t));
                }

                std::vector<Token> _tokens;
                std::size_t _at = 0;
        };

        auto precedence(Expr::Op op) -> int
        {
            switch (op) {
                case Expr::Op::Add:
                case Expr::Op::Sub: return 1;
                case Expr::Op::Mul:
                case Expr::Op::Div: return 2;
                case Expr::Op::Neg: return 3;
                default:            return 4;
            }
        }

        auto comparison_text(Comparison c) -> std::string_view
        {
            switch (c) {
                case Comparison::Eq: return "==";
                case Comparison::Ge: return ">=";
                case Comparison::Le: return "<=";
                case Comparison::Gt: return ">";
                case Comparison::Lt: return "<";
            }
            return "==";
        }

        auto quoted(const std::string & s) -> std::string
        {
            std::string out = "\"";
            for (char c : s) {
                if (c == '"' || c == '\\')
                    out.push_back('\\');
                out.push_back(c);
            }
            return out + "\"";
        }

        auto print_guard(const Guard & g) -> std::string
        {
            return "where " + print_expr(g.lhs) + " " + std::string(comparison_text(g.cmp)) + " " + print_expr(g.rhs);
        }
    }

    auto parse_ruleset(std::string_view text) -> DischargeRuleSet
    {
        return Parser(lex(text)).ruleset();
    }

    auto print_expr(const Expr & e) -> std::string
    {
        switch (e.op) {
            case Expr::Op::Number:
                return e.value.get_str();
            case Expr::Op::Degree:
                return "deg(" + e.var + ")";
            case Expr::Op::Neg: {
                auto inner = print_expr(e.args[0]);
                return precedence(e.args[0].op) < precedence(Expr::Op::Neg) ? "-(" + inner + ")" : "-" + inner;
            }
            default:
                break;
        }
        int p = precedence(e.op);
        auto lhs = print_expr(e.args[0]);
        auto rhs = print_expr(e.args[1]);
        // left-associative: an equal-precedence right operand needs parentheses
        if (precedence(e.args[0].op) < p)
            lhs = "(" + lhs + ")";
        if (precedence(e.args[1].op) <= p)
            rhs = "(" + rhs + ")";
        const char * op = e.op == Expr::Op::Add ? " + " : e.op == Expr::Op::Sub ? " - " : e.op == Expr::Op::Mul ? " * " : " / ";
        return lhs + op + rhs;
    }

    auto print_ruleset(const DischargeRuleSet & rs) -> std::string
    {
        std::string out = "ruleset " + quoted(rs.name) + "\n";
        for (const auto * c : {&rs.vertex_charge, &rs.face_charge})
            out += "charge " + std::string(to_string(c->kind)) + " " + c->var + " := " + print_expr(c->value) + "\n";
        for (const auto & r : rs.rules) {
            out += "rule " + r.id + ": from " + std::string(to_string(r.sender_kind)) + " " + r.sender_var;
            if (r.sender_guard)
                out += " " + print_guard(*r.sender_guard);
            out += " to each incident " + std::string(to_string(r.receiver_kind)) + " " + r.receiver_var;
            if (r.receiver_guard)
                out += " " + print_guard(*r.receiver_guard);
            out += " send " + print_expr(r.amount) + "\n";
        }
        return out;
    }
}
