#include "constructive/expr.hpp"

#include <cctype>
#include <vector>

#include "constructive/constants.hpp"

namespace constructive {

namespace {

ExprPtr make_literal(Rational r) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::literal;
    e->literal = std::move(r);
    return e;
}

ExprPtr make_named(NamedConstant c) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::named;
    e->constant = c;
    return e;
}

ExprPtr make_unary(ExprKind k, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    return e;
}

ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

// ---------------------------------------------------------------------------
// Lexer / parser

struct Token {
    enum class Kind { number, name, plus, minus, star, slash, lparen, rparen, comma, end };
    Kind kind;
    std::string text;
    Rational value; // numbers
    std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Token::Kind k, std::string t, std::size_t p) {
        out.push_back({k, std::move(t), Rational(0), p});
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        switch (c) {
            case '+': push(Token::Kind::plus, "+", i); ++i; continue;
            case '-': push(Token::Kind::minus, "-", i); ++i; continue;
            case '*': push(Token::Kind::star, "*", i); ++i; continue;
            case '/': push(Token::Kind::slash, "/", i); ++i; continue;
            case '(': push(Token::Kind::lparen, "(", i); ++i; continue;
            case ')': push(Token::Kind::rparen, ")", i); ++i; continue;
            case ',': push(Token::Kind::comma, ",", i); ++i; continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            std::string ipart(text.substr(start, i - start));
            if (i < text.size() && text[i] == '.') {
                ++i;
                std::size_t fstart = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == fstart)
                    throw ParseError("expected digits after decimal point", i);
                std::string fpart(text.substr(fstart, i - fstart));
                // exact decimal: 1.414 = 1414 / 10^3, no float round trip
                Int num{ipart + fpart};
                Int den = 1;
                for (std::size_t k = 0; k < fpart.size(); ++k) den *= 10;
                Token t{Token::Kind::number, std::string(text.substr(start, i - start)),
                        Rational(std::move(num), std::move(den)), start};
                out.push_back(std::move(t));
            } else {
                Token t{Token::Kind::number, ipart, Rational(Int(ipart)), start};
                out.push_back(std::move(t));
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            Token t{Token::Kind::name, std::string(text.substr(start, i - start)),
                    Rational(0), start};
            out.push_back(std::move(t));
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    push(Token::Kind::end, "", text.size());
    return out;
}

struct ExprParser {
    std::vector<Token> tokens;
    std::size_t at = 0;

    const Token& peek() const { return tokens[at]; }
    Token take() { return tokens[at++]; }
    void expect(Token::Kind k, const char* what) {
        Token t = take();
        if (t.kind != k) throw ParseError(std::string("expected ") + what, t.pos);
    }

    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (peek().kind == Token::Kind::plus) {
                take();
                lhs = make_binary(ExprKind::add, std::move(lhs), parse_term());
            } else if (peek().kind == Token::Kind::minus) {
                take();
                lhs = make_binary(ExprKind::sub, std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }
    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (peek().kind == Token::Kind::star) {
                take();
                lhs = make_binary(ExprKind::mul, std::move(lhs), parse_unary());
            } else if (peek().kind == Token::Kind::slash) {
                take();
                lhs = make_binary(ExprKind::div_by, std::move(lhs), parse_unary());
            } else {
                return lhs;
            }
        }
    }
    ExprPtr parse_unary() {
        if (peek().kind == Token::Kind::minus) {
            take();
            return make_unary(ExprKind::negate, parse_unary());
        }
        return parse_primary();
    }
    ExprPtr parse_primary() {
        Token t = take();
        if (t.kind == Token::Kind::number) return make_literal(t.value);
        if (t.kind == Token::Kind::lparen) {
            ExprPtr inner = parse_sum();
            expect(Token::Kind::rparen, "')'");
            return inner;
        }
        if (t.kind == Token::Kind::name) {
            if (t.text == "pi") return make_named(NamedConstant::pi);
            if (t.text == "e") return make_named(NamedConstant::e);
            if (t.text == "sqrt2") return make_named(NamedConstant::sqrt2);
            if (t.text == "zeta3") return make_named(NamedConstant::zeta3);
            if (t.text == "sqrt" || t.text == "abs" || t.text == "inv" ||
                t.text == "max" || t.text == "min") {
                expect(Token::Kind::lparen, "'('");
                ExprPtr first = parse_sum();
                if (t.text == "max" || t.text == "min") {
                    expect(Token::Kind::comma, "','");
                    ExprPtr second = parse_sum();
                    expect(Token::Kind::rparen, "')'");
                    return make_binary(t.text == "max" ? ExprKind::max_of : ExprKind::min_of,
                                       std::move(first), std::move(second));
                }
                expect(Token::Kind::rparen, "')'");
                if (t.text == "sqrt") return make_unary(ExprKind::sqrt_of, std::move(first));
                if (t.text == "abs") return make_unary(ExprKind::abs_of, std::move(first));
                return make_unary(ExprKind::inv_of, std::move(first));
            }
            throw ParseError("unknown name '" + t.text + "'", t.pos);
        }
        throw ParseError("expected a number, name or '('", t.pos);
    }
};

} // namespace

ExprPtr parse_expr(std::string_view text) {
    ExprParser p{lex(text)};
    ExprPtr e = p.parse_sum();
    if (p.peek().kind != Token::Kind::end)
        throw ParseError("unexpected trailing input", p.peek().pos);
    return e;
}

namespace {

int expr_precedence(ExprKind k) {
    switch (k) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul:
        case ExprKind::div_by: return 2;
        case ExprKind::negate: return 3;
        default: return 4;
    }
}

void print_rec(const ExprPtr& e, int min_prec, std::string& out) {
    int prec = expr_precedence(e->kind);
    bool paren = prec < min_prec;
    if (paren) out += '(';
    switch (e->kind) {
        case ExprKind::literal: out += e->literal.str(); break;
        case ExprKind::named:
            switch (e->constant) {
                case NamedConstant::pi: out += "pi"; break;
                case NamedConstant::e: out += "e"; break;
                case NamedConstant::sqrt2: out += "sqrt2"; break;
                case NamedConstant::zeta3: out += "zeta3"; break;
            }
            break;
        case ExprKind::sqrt_of:
        case ExprKind::abs_of:
        case ExprKind::inv_of:
            out += e->kind == ExprKind::sqrt_of ? "sqrt("
                 : e->kind == ExprKind::abs_of  ? "abs("
                                                : "inv(";
            print_rec(e->a, 0, out);
            out += ')';
            break;
        case ExprKind::max_of:
        case ExprKind::min_of:
            out += e->kind == ExprKind::max_of ? "max(" : "min(";
            print_rec(e->a, 0, out);
            out += ", ";
            print_rec(e->b, 0, out);
            out += ')';
            break;
        case ExprKind::negate:
            out += '-';
            print_rec(e->a, 3, out);
            break;
        case ExprKind::add:
        case ExprKind::sub:
            print_rec(e->a, 1, out);
            out += e->kind == ExprKind::add ? " + " : " - ";
            print_rec(e->b, 2, out);
            break;
        case ExprKind::mul:
        case ExprKind::div_by:
            print_rec(e->a, 2, out);
            out += e->kind == ExprKind::mul ? "*" : "/";
            print_rec(e->b, 3, out);
            break;
    }
    if (paren) out += ')';
}

} // namespace

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::literal: return a->literal == b->literal;
        case ExprKind::named: return a->constant == b->constant;
        default:
            if (!structurally_equal(a->a, b->a)) return false;
            if ((a->b == nullptr) != (b->b == nullptr)) return false;
            return !a->b || structurally_equal(a->b, b->b);
    }
}

namespace {

// Literal-only subtrees denote rationals; their arithmetic is decidable, so
// they are folded exactly and never consume apartness budget.
bool rational_only(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::literal: return true;
        case ExprKind::named: return false;
        case ExprKind::sqrt_of: return false;
        default:
            return (!e->a || rational_only(e->a)) && (!e->b || rational_only(e->b));
    }
}

Rational fold_rational(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::literal: return e->literal;
        case ExprKind::negate: return -fold_rational(e->a);
        case ExprKind::abs_of: return abs(fold_rational(e->a));
        case ExprKind::inv_of: {
            Rational v = fold_rational(e->a);
            if (v.is_zero())
                throw DomainError("inv of exact zero");
            return v.reciprocal();
        }
        case ExprKind::add: return fold_rational(e->a) + fold_rational(e->b);
        case ExprKind::sub: return fold_rational(e->a) - fold_rational(e->b);
        case ExprKind::mul: return fold_rational(e->a) * fold_rational(e->b);
        case ExprKind::div_by: {
            Rational d = fold_rational(e->b);
            if (d.is_zero())
                throw DomainError("division by exact zero");
            return fold_rational(e->a) / d;
        }
        case ExprKind::max_of: return max(fold_rational(e->a), fold_rational(e->b));
        case ExprKind::min_of: return min(fold_rational(e->a), fold_rational(e->b));
        default:
            throw DomainError("expression is not rational-valued");
    }
}

struct UnknownSignal {
    std::string subexpression;
};

Duplex fold_duplex(const ExprPtr& e, long long budget) {
    if (rational_only(e))
        return Duplex::from_rational(fold_rational(e));
    switch (e->kind) {
        case ExprKind::named:
            switch (e->constant) {
                case NamedConstant::pi: return const_pi();
                case NamedConstant::e: return const_e();
                case NamedConstant::sqrt2: return const_sqrt(Rational(2));
                case NamedConstant::zeta3: return const_zeta3();
            }
            throw Error("unreachable");
        case ExprKind::sqrt_of: {
            if (!rational_only(e->a))
                throw DomainError("sqrt takes an exact rational argument");
            return const_sqrt(fold_rational(e->a));
        }
        case ExprKind::negate: return -fold_duplex(e->a, budget);
        case ExprKind::abs_of: return abs(fold_duplex(e->a, budget));
        case ExprKind::inv_of: {
            Duplex d = fold_duplex(e->a, budget);
            auto w = apartness_search(d, budget);
            if (!w) throw UnknownSignal{print_expr(e->a)};
            return inverse(d, *w);
        }
        case ExprKind::add: return fold_duplex(e->a, budget) + fold_duplex(e->b, budget);
        case ExprKind::sub: return fold_duplex(e->a, budget) - fold_duplex(e->b, budget);
        case ExprKind::mul: return fold_duplex(e->a, budget) * fold_duplex(e->b, budget);
        case ExprKind::div_by: {
            Duplex num = fold_duplex(e->a, budget);
            if (rational_only(e->b)) {
                Rational d = fold_rational(e->b);
                if (d.is_zero())
                    throw DomainError("division by exact zero");
                return num * Duplex::from_rational(d.reciprocal());
            }
            Duplex den = fold_duplex(e->b, budget);
            auto w = apartness_search(den, budget);
            if (!w) throw UnknownSignal{print_expr(e->b)};
            return num * inverse(den, *w);
        }
        case ExprKind::max_of: return max(fold_duplex(e->a, budget), fold_duplex(e->b, budget));
        case ExprKind::min_of: return min(fold_duplex(e->a, budget), fold_duplex(e->b, budget));
        case ExprKind::literal: return Duplex::from_rational(e->literal);
    }
    throw Error("unreachable");
}

} // namespace

std::optional<Duplex> fold_expr(const ExprPtr& e, long long budget, std::string* offending) {
    try {
        return fold_duplex(e, budget);
    } catch (const UnknownSignal& u) {
        if (offending) *offending = u.subexpression;
        return std::nullopt;
    }
}

EvalResult eval_expr(const ExprPtr& e, long long digits, long long budget) {
    std::string offending;
    auto d = fold_expr(e, budget, &offending);
    if (!d) return EvalUnknown{offending, budget};
    return EvalOk{to_decimal(*d, digits), digits};
}

} // namespace constructive
