#include "constructive/logic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

namespace constructive::logic {

FormulaPtr atom(std::string name) {
    return std::make_shared<Formula>(Conn::atom, std::move(name), nullptr, nullptr);
}
FormulaPtr falsum() {
    static const FormulaPtr f =
        std::make_shared<Formula>(Conn::falsum, "", nullptr, nullptr);
    return f;
}
FormulaPtr neg(FormulaPtr a) {
    return std::make_shared<Formula>(Conn::neg, "", std::move(a), nullptr);
}
FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Conn::conj, "", std::move(a), std::move(b));
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Conn::disj, "", std::move(a), std::move(b));
}
FormulaPtr impl(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Conn::impl, "", std::move(a), std::move(b));
}
FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Conn::iff, "", std::move(a), std::move(b));
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->conn != b->conn) return false;
    if (a->conn == Conn::atom) return a->name == b->name;
    if (a->conn == Conn::falsum) return true;
    if (a->conn == Conn::neg) return structurally_equal(a->lhs, b->lhs);
    return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

namespace {

int precedence(Conn c) {
    switch (c) {
        case Conn::atom:
        case Conn::falsum: return 5;
        case Conn::neg: return 4;
        case Conn::conj: return 3;
        case Conn::disj: return 2;
        case Conn::impl: return 1;
        case Conn::iff: return 0;
    }
    return 5;
}

void print_rec(const FormulaPtr& f, int min_prec, std::string& out) {
    int prec = precedence(f->conn);
    bool paren = prec < min_prec;
    if (paren) out += '(';
    switch (f->conn) {
        case Conn::atom: out += f->name; break;
        case Conn::falsum: out += "false"; break;
        case Conn::neg:
            out += '~';
            print_rec(f->lhs, 4, out);
            break;
        case Conn::conj:
            print_rec(f->lhs, 3, out);
            out += " & ";
            print_rec(f->rhs, 4, out);
            break;
        case Conn::disj:
            print_rec(f->lhs, 2, out);
            out += " | ";
            print_rec(f->rhs, 3, out);
            break;
        case Conn::impl:
            print_rec(f->lhs, 2, out);
            out += " -> ";
            print_rec(f->rhs, 1, out);
            break;
        case Conn::iff:
            print_rec(f->lhs, 1, out);
            out += " <-> ";
            print_rec(f->rhs, 0, out);
            break;
    }
    if (paren) out += ')';
}

} // namespace

std::string print_formula(const FormulaPtr& f) {
    std::string out;
    print_rec(f, 0, out);
    return out;
}

namespace {

void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
    if (!f) return;
    if (f->conn == Conn::atom) out.insert(f->name);
    collect_atoms(f->lhs, out);
    collect_atoms(f->rhs, out);
}

} // namespace

std::vector<std::string> atoms_of(const FormulaPtr& f) {
    std::set<std::string> s;
    collect_atoms(f, s);
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum class Kind { atom, tnot, tand, tor, timp, tiff, lparen, rparen, end };
    Kind kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '~') { out.push_back({Token::Kind::tnot, "~", i}); ++i; continue; }
        if (c == '&') { out.push_back({Token::Kind::tand, "&", i}); ++i; continue; }
        if (c == '|') { out.push_back({Token::Kind::tor, "|", i}); ++i; continue; }
        if (c == '(') { out.push_back({Token::Kind::lparen, "(", i}); ++i; continue; }
        if (c == ')') { out.push_back({Token::Kind::rparen, ")", i}); ++i; continue; }
        if (c == '-') {
            if (i + 1 < text.size() && text[i + 1] == '>') {
                out.push_back({Token::Kind::timp, "->", i});
                i += 2;
                continue;
            }
            throw ParseError("expected '->'", i);
        }
        if (c == '<') {
            if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
                out.push_back({Token::Kind::tiff, "<->", i});
                i += 3;
                continue;
            }
            throw ParseError("expected '<->'", i);
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t start = i;
            while (i < text.size() &&
                   ((text[i] >= 'a' && text[i] <= 'z') ||
                    (text[i] >= '0' && text[i] <= '9') || text[i] == '_'))
                ++i;
            out.push_back({Token::Kind::atom, std::string(text.substr(start, i - start)), start});
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Token::Kind::end, "", text.size()});
    return out;
}

struct FormulaParser {
    std::vector<Token> tokens;
    std::size_t at = 0;

    const Token& peek() const { return tokens[at]; }
    Token take() { return tokens[at++]; }

    FormulaPtr parse_iff() {
        FormulaPtr lhs = parse_imp();
        if (peek().kind == Token::Kind::tiff) {
            take();
            return iff(std::move(lhs), parse_iff()); // right associative
        }
        return lhs;
    }
    FormulaPtr parse_imp() {
        FormulaPtr lhs = parse_or();
        if (peek().kind == Token::Kind::timp) {
            take();
            return impl(std::move(lhs), parse_imp()); // right associative
        }
        return lhs;
    }
    FormulaPtr parse_or() {
        FormulaPtr lhs = parse_and();
        while (peek().kind == Token::Kind::tor) {
            take();
            lhs = disj(std::move(lhs), parse_and());
        }
        return lhs;
    }
    FormulaPtr parse_and() {
        FormulaPtr lhs = parse_unary();
        while (peek().kind == Token::Kind::tand) {
            take();
            lhs = conj(std::move(lhs), parse_unary());
        }
        return lhs;
    }
    FormulaPtr parse_unary() {
        if (peek().kind == Token::Kind::tnot) {
            take();
            return neg(parse_unary());
        }
        return parse_primary();
    }
    FormulaPtr parse_primary() {
        Token t = take();
        if (t.kind == Token::Kind::atom) return atom(t.text);
        if (t.kind == Token::Kind::lparen) {
            FormulaPtr inner = parse_iff();
            Token close = take();
            if (close.kind != Token::Kind::rparen)
                throw ParseError("expected ')'", close.pos);
            return inner;
        }
        throw ParseError("expected an atom, '~' or '('", t.pos);
    }
};

} // namespace

FormulaPtr parse_formula(std::string_view text) {
    FormulaParser p{lex(text)};
    FormulaPtr f = p.parse_iff();
    if (p.peek().kind != Token::Kind::end)
        throw ParseError("unexpected trailing input", p.peek().pos);
    return f;
}

// ---------------------------------------------------------------------------
// Classical engine (truth tables)

namespace {

bool eval_classical(const FormulaPtr& f,
                    const std::map<std::string, bool>& assignment) {
    switch (f->conn) {
        case Conn::atom: return assignment.at(f->name);
        case Conn::falsum: return false;
        case Conn::neg: return !eval_classical(f->lhs, assignment);
        case Conn::conj:
            return eval_classical(f->lhs, assignment) && eval_classical(f->rhs, assignment);
        case Conn::disj:
            return eval_classical(f->lhs, assignment) || eval_classical(f->rhs, assignment);
        case Conn::impl:
            return !eval_classical(f->lhs, assignment) || eval_classical(f->rhs, assignment);
        case Conn::iff:
            return eval_classical(f->lhs, assignment) == eval_classical(f->rhs, assignment);
    }
    return false;
}

} // namespace

std::optional<std::map<std::string, bool>> classical_countermodel(const FormulaPtr& f) {
    auto names = atoms_of(f);
    if (names.size() > 24)
        throw ResourceError("truth-table bound exceeded (more than 24 atoms)");
    std::uint32_t count = 1u << names.size();
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        std::map<std::string, bool> assignment;
        for (std::size_t i = 0; i < names.size(); ++i)
            assignment[names[i]] = (bits >> i) & 1u;
        if (!eval_classical(f, assignment)) return assignment;
    }
    return std::nullopt;
}

bool classical_valid(const FormulaPtr& f) {
    return !classical_countermodel(f).has_value();
}

// ---------------------------------------------------------------------------
// Classical abbreviation table

FormulaPtr expand_classical_abbreviations(const FormulaPtr& f) {
    switch (f->conn) {
        case Conn::atom:
        case Conn::falsum: return f;
        case Conn::neg: return neg(expand_classical_abbreviations(f->lhs));
        case Conn::conj:
            return conj(expand_classical_abbreviations(f->lhs),
                        expand_classical_abbreviations(f->rhs));
        case Conn::disj: {
            auto a = expand_classical_abbreviations(f->lhs);
            auto b = expand_classical_abbreviations(f->rhs);
            return neg(conj(neg(a), neg(b)));
        }
        case Conn::impl: {
            auto a = expand_classical_abbreviations(f->lhs);
            auto b = expand_classical_abbreviations(f->rhs);
            return neg(conj(a, neg(b)));
        }
        case Conn::iff:
            return conj(expand_classical_abbreviations(impl(f->lhs, f->rhs)),
                        expand_classical_abbreviations(impl(f->rhs, f->lhs)));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Intuitionistic engine: contraction-free sequent calculus (G4ip).
// Left implications are split on the shape of their antecedent; no rule
// duplicates a formula into its own premise, so root-first search terminates
// without loop checking. Formulas are hash-consed into an arena so that
// contexts can be kept as sorted pointer sets and whole sequents memoized;
// without that, repeated subproblems blow up on nested <-> and double
// negations.

namespace {

struct Node {
    Conn conn;
    int atom; // interning index, -1 otherwise
    const Node* l;
    const Node* r;
    // 64-slot classical truth table over the first six atoms (slot a assigns
    // atom i the bit (a >> i) & 1). Valid only when `small` -- every atom in
    // the subtree has index < 6. A classically refutable sequent can never
    // be intuitionistically provable, so this prunes most failures in O(1).
    std::uint64_t tt;
    bool small;
};

struct SequentKey {
    std::vector<const Node*> gamma; // sorted, unique
    const Node* goal;
    bool operator==(const SequentKey& o) const {
        return goal == o.goal && gamma == o.gamma;
    }
};

struct SequentHash {
    std::size_t operator()(const SequentKey& k) const {
        std::size_t h = std::hash<const void*>()(k.goal);
        for (const Node* n : k.gamma)
            h = h * 1099511628211ull ^ std::hash<const void*>()(n);
        return h;
    }
};

class Prover {
  public:
    bool prove_formula(const FormulaPtr& f) { return prove({}, desugar(f)); }

  private:
    std::deque<Node> arena_;
    std::map<std::tuple<int, int, const Node*, const Node*>, const Node*> interned_;
    std::map<std::string, int> atom_ids_;
    std::unordered_map<SequentKey, bool, SequentHash> memo_;

    static std::uint64_t atom_pattern(int i) {
        std::uint64_t p = 0;
        for (int a = 0; a < 64; ++a)
            if ((a >> i) & 1) p |= std::uint64_t(1) << a;
        return p;
    }

    const Node* make(Conn c, int atom, const Node* l, const Node* r) {
        auto key = std::make_tuple(static_cast<int>(c), atom, l, r);
        auto it = interned_.find(key);
        if (it != interned_.end()) return it->second;
        std::uint64_t tt = 0;
        bool small = true;
        switch (c) {
            case Conn::atom:
                small = atom < 6;
                tt = small ? atom_pattern(atom) : 0;
                break;
            case Conn::falsum: tt = 0; break;
            case Conn::conj: tt = l->tt & r->tt; small = l->small && r->small; break;
            case Conn::disj: tt = l->tt | r->tt; small = l->small && r->small; break;
            case Conn::impl: tt = ~l->tt | r->tt; small = l->small && r->small; break;
            default: break;
        }
        arena_.push_back(Node{c, atom, l, r, tt, small});
        const Node* n = &arena_.back();
        interned_.emplace(key, n);
        return n;
    }
    const Node* bottom() { return make(Conn::falsum, -1, nullptr, nullptr); }
    const Node* imp(const Node* a, const Node* b) { return make(Conn::impl, -1, a, b); }
    const Node* cnj(const Node* a, const Node* b) { return make(Conn::conj, -1, a, b); }
    const Node* dsj(const Node* a, const Node* b) { return make(Conn::disj, -1, a, b); }

    // ~a enters as a -> false, <-> as its two implications
    const Node* desugar(const FormulaPtr& f) {
        switch (f->conn) {
            case Conn::atom: {
                auto [it, fresh] = atom_ids_.emplace(f->name, static_cast<int>(atom_ids_.size()));
                return make(Conn::atom, it->second, nullptr, nullptr);
            }
            case Conn::falsum: return bottom();
            case Conn::neg: return imp(desugar(f->lhs), bottom());
            case Conn::conj: return cnj(desugar(f->lhs), desugar(f->rhs));
            case Conn::disj: return dsj(desugar(f->lhs), desugar(f->rhs));
            case Conn::impl: return imp(desugar(f->lhs), desugar(f->rhs));
            case Conn::iff: {
                const Node* a = desugar(f->lhs);
                const Node* b = desugar(f->rhs);
                return cnj(imp(a, b), imp(b, a));
            }
        }
        return bottom();
    }

    static void canonicalize(std::vector<const Node*>& gamma) {
        std::sort(gamma.begin(), gamma.end());
        gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
    }

    static bool contains(const std::vector<const Node*>& gamma, const Node* f) {
        return std::binary_search(gamma.begin(), gamma.end(), f);
    }

    bool prove(std::vector<const Node*> gamma, const Node* goal) {
        canonicalize(gamma);
        // contexts are sets: contraction is admissible in G4ip, and the
        // general identity gamma, A |- A below is sound by weakening
        SequentKey key{gamma, goal};
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        bool result = classically_refutable(key.gamma, goal)
                          ? false
                          : search(std::move(gamma), goal);
        memo_.emplace(std::move(key), result);
        return result;
    }

    static bool classically_refutable(const std::vector<const Node*>& gamma,
                                      const Node* goal) {
        if (!goal->small) return false;
        std::uint64_t hyp = ~std::uint64_t(0);
        for (const Node* f : gamma) {
            if (!f->small) return false;
            hyp &= f->tt;
        }
        return (hyp & ~goal->tt) != 0;
    }

    bool search(std::vector<const Node*> gamma, const Node* goal) {
        for (;;) {
            if (contains(gamma, goal)) return true;
            // Invertible right rules.
            if (goal->conn == Conn::impl) {
                gamma.push_back(goal->l);
                canonicalize(gamma);
                goal = goal->r;
                continue;
            }
            if (goal->conn == Conn::conj)
                return prove(gamma, goal->l) && prove(gamma, goal->r);

            // Invertible left rules, one rewrite per pass.
            bool changed = false;
            for (std::size_t i = 0; i < gamma.size() && !changed; ++i) {
                const Node* f = gamma[i];
                if (f->conn == Conn::falsum) return true;
                if (f->conn == Conn::conj) {
                    gamma[i] = f->l;
                    gamma.push_back(f->r);
                    changed = true;
                } else if (f->conn == Conn::impl) {
                    const Node* ant = f->l;
                    if (ant->conn == Conn::falsum) {
                        gamma.erase(gamma.begin() + i); // false -> B holds vacuously
                        changed = true;
                    } else if (ant->conn == Conn::conj) {
                        gamma[i] = imp(ant->l, imp(ant->r, f->r));
                        changed = true;
                    } else if (ant->conn == Conn::disj) {
                        gamma[i] = imp(ant->l, f->r);
                        gamma.push_back(imp(ant->r, f->r));
                        changed = true;
                    } else if (ant->conn == Conn::atom && contains(gamma, ant)) {
                        gamma[i] = f->r;
                        changed = true;
                    }
                }
            }
            if (changed) {
                canonicalize(gamma);
                continue;
            }

            // Invertible branching on a left disjunction.
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                if (gamma[i]->conn == Conn::disj) {
                    std::vector<const Node*> left = gamma, right = gamma;
                    left[i] = gamma[i]->l;
                    right[i] = gamma[i]->r;
                    return prove(std::move(left), goal) && prove(std::move(right), goal);
                }
            }

            // Saturated: only the non-invertible choices remain.
            if (goal->conn == Conn::disj) {
                if (prove(gamma, goal->l) || prove(gamma, goal->r)) return true;
            }
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                const Node* f = gamma[i];
                if (f->conn != Conn::impl || f->l->conn != Conn::impl) continue;
                // (C -> D) -> B: prove C -> D under D -> B, then resume with B.
                const Node* c = f->l->l;
                const Node* d = f->l->r;
                const Node* b = f->r;
                std::vector<const Node*> rest;
                rest.reserve(gamma.size());
                for (std::size_t j = 0; j < gamma.size(); ++j)
                    if (j != i) rest.push_back(gamma[j]);
                std::vector<const Node*> first = rest, second = std::move(rest);
                first.push_back(imp(d, b));
                second.push_back(b);
                if (prove(std::move(first), imp(c, d)) &&
                    prove(std::move(second), goal))
                    return true;
            }
            return false;
        }
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Kripke models

namespace {

bool forces(const KripkeModel& m, std::size_t w, const FormulaPtr& f) {
    switch (f->conn) {
        case Conn::atom: {
            auto it = m.valuation.find(f->name);
            return it != m.valuation.end() && it->second[w];
        }
        case Conn::falsum: return false;
        case Conn::neg: {
            for (std::size_t v = 0; v < m.worlds; ++v)
                if (m.leq[w][v] && forces(m, v, f->lhs)) return false;
            return true;
        }
        case Conn::conj: return forces(m, w, f->lhs) && forces(m, w, f->rhs);
        case Conn::disj: return forces(m, w, f->lhs) || forces(m, w, f->rhs);
        case Conn::impl: {
            for (std::size_t v = 0; v < m.worlds; ++v)
                if (m.leq[w][v] && forces(m, v, f->lhs) && !forces(m, v, f->rhs))
                    return false;
            return true;
        }
        case Conn::iff: {
            for (std::size_t v = 0; v < m.worlds; ++v)
                if (m.leq[w][v] && forces(m, v, f->lhs) != forces(m, v, f->rhs))
                    return false;
            return true;
        }
    }
    return false;
}

bool fail(std::string* reason, const char* why) {
    if (reason) *reason = why;
    return false;
}

} // namespace

bool verify_countermodel(const KripkeModel& m, const FormulaPtr& f, std::string* reason) {
    if (m.worlds == 0) return fail(reason, "no worlds");
    if (m.leq.size() != m.worlds) return fail(reason, "accessibility size mismatch");
    for (const auto& row : m.leq)
        if (row.size() != m.worlds) return fail(reason, "accessibility row size mismatch");
    for (std::size_t i = 0; i < m.worlds; ++i)
        if (!m.leq[i][i]) return fail(reason, "accessibility is not reflexive");
    for (std::size_t i = 0; i < m.worlds; ++i)
        for (std::size_t j = 0; j < m.worlds; ++j)
            for (std::size_t k = 0; k < m.worlds; ++k)
                if (m.leq[i][j] && m.leq[j][k] && !m.leq[i][k])
                    return fail(reason, "accessibility is not transitive");
    for (std::size_t j = 0; j < m.worlds; ++j)
        if (!m.leq[0][j]) return fail(reason, "world 0 is not a root");
    for (const auto& [name, mask] : m.valuation) {
        if (mask.size() != m.worlds) return fail(reason, "valuation size mismatch");
        for (std::size_t i = 0; i < m.worlds; ++i)
            for (std::size_t j = 0; j < m.worlds; ++j)
                if (m.leq[i][j] && mask[i] && !mask[j])
                    return fail(reason, "valuation is not monotone");
    }
    if (forces(m, 0, f)) return fail(reason, "root forces the formula");
    return true;
}

std::string format_countermodel(const KripkeModel& m) {
    std::ostringstream os;
    os << "countermodel: " << m.worlds << " world" << (m.worlds == 1 ? "" : "s")
       << " (w0 root)\n";
    for (std::size_t i = 0; i < m.worlds; ++i)
        for (std::size_t j = 0; j < m.worlds; ++j)
            if (i != j && m.leq[i][j]) os << "w" << i << " <= w" << j << "\n";
    for (std::size_t w = 0; w < m.worlds; ++w) {
        os << "w" << w << ":";
        bool any = false;
        for (const auto& [name, mask] : m.valuation)
            if (mask[w]) {
                os << " " << name;
                any = true;
            }
        if (!any) os << " (none)";
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Countermodel search: a classical falsifying assignment is a one-world
// model; otherwise try small rooted frames with every monotone valuation.

namespace {

struct Frame {
    std::size_t worlds;
    std::array<std::uint8_t, 4> up; // up[w] = bitmask of worlds >= w, incl. w
};

// Rooted posets on up to four points; world 0 is always the minimum.
constexpr Frame kFrames[] = {
    {2, {0b0011, 0b0010, 0, 0}},            // chain 0<1
    {3, {0b0111, 0b0010, 0b0100, 0}},       // fork 0<1, 0<2
    {3, {0b0111, 0b0110, 0b0100, 0}},       // chain 0<1<2
    {4, {0b1111, 0b0110, 0b0100, 0b1000}},  // 0<1<2, 0<3
    {4, {0b1111, 0b1110, 0b0100, 0b1000}},  // 0<1, 1<2, 1<3
    {4, {0b1111, 0b1010, 0b1100, 0b1000}},  // diamond 0<1<3, 0<2<3
    {4, {0b1111, 0b0010, 0b0100, 0b1000}},  // fork 0<1, 0<2, 0<3
    {4, {0b1111, 0b1110, 0b1100, 0b1000}},  // chain 0<1<2<3
};

std::uint8_t eval_mask(const FormulaPtr& f, const Frame& fr,
                       const std::map<std::string, std::uint8_t>& val) {
    switch (f->conn) {
        case Conn::atom: {
            auto it = val.find(f->name);
            return it == val.end() ? 0 : it->second;
        }
        case Conn::falsum: return 0;
        case Conn::neg: {
            std::uint8_t a = eval_mask(f->lhs, fr, val);
            std::uint8_t out = 0;
            for (std::size_t w = 0; w < fr.worlds; ++w)
                if ((fr.up[w] & a) == 0) out |= 1u << w;
            return out;
        }
        case Conn::conj:
            return eval_mask(f->lhs, fr, val) & eval_mask(f->rhs, fr, val);
        case Conn::disj:
            return eval_mask(f->lhs, fr, val) | eval_mask(f->rhs, fr, val);
        case Conn::impl: {
            std::uint8_t a = eval_mask(f->lhs, fr, val);
            std::uint8_t b = eval_mask(f->rhs, fr, val);
            std::uint8_t out = 0;
            for (std::size_t w = 0; w < fr.worlds; ++w)
                if ((fr.up[w] & a & static_cast<std::uint8_t>(~b)) == 0) out |= 1u << w;
            return out;
        }
        case Conn::iff: {
            std::uint8_t a = eval_mask(f->lhs, fr, val);
            std::uint8_t b = eval_mask(f->rhs, fr, val);
            std::uint8_t out = 0;
            for (std::size_t w = 0; w < fr.worlds; ++w)
                if ((fr.up[w] & (a ^ b)) == 0) out |= 1u << w;
            return out;
        }
    }
    return 0;
}

KripkeModel materialize(const Frame& fr,
                        const std::vector<std::string>& names,
                        const std::vector<std::uint8_t>& chosen) {
    KripkeModel m;
    m.worlds = fr.worlds;
    m.leq.assign(fr.worlds, std::vector<bool>(fr.worlds, false));
    for (std::size_t i = 0; i < fr.worlds; ++i)
        for (std::size_t j = 0; j < fr.worlds; ++j)
            m.leq[i][j] = (fr.up[i] >> j) & 1u;
    for (std::size_t a = 0; a < names.size(); ++a) {
        std::vector<bool> mask(fr.worlds, false);
        for (std::size_t w = 0; w < fr.worlds; ++w) mask[w] = (chosen[a] >> w) & 1u;
        m.valuation[names[a]] = std::move(mask);
    }
    return m;
}

std::optional<KripkeModel> search_countermodel(const FormulaPtr& f) {
    auto classical = classical_countermodel(f);
    if (classical) {
        KripkeModel m;
        m.worlds = 1;
        m.leq = {{true}};
        for (const auto& [name, v] : *classical) m.valuation[name] = {v};
        return m;
    }
    auto names = atoms_of(f);
    if (names.size() > 5) return std::nullopt; // enumeration would be pointless
    for (const Frame& fr : kFrames) {
        // All up-closed subsets of the frame serve as candidate valuations.
        std::vector<std::uint8_t> upsets;
        for (std::uint8_t s = 0; s < (1u << fr.worlds); ++s) {
            bool closed = true;
            for (std::size_t w = 0; w < fr.worlds && closed; ++w)
                if ((s >> w) & 1u) closed = (fr.up[w] & ~s) == 0;
            if (closed) upsets.push_back(s);
        }
        std::vector<std::size_t> pick(names.size(), 0);
        for (;;) {
            std::map<std::string, std::uint8_t> val;
            std::vector<std::uint8_t> chosen(names.size());
            for (std::size_t a = 0; a < names.size(); ++a) {
                chosen[a] = upsets[pick[a]];
                val[names[a]] = chosen[a];
            }
            if (!((eval_mask(f, fr, val) >> 0) & 1u))
                return materialize(fr, names, chosen);
            // odometer
            std::size_t a = 0;
            while (a < names.size() && ++pick[a] == upsets.size()) pick[a++] = 0;
            if (a == names.size()) break;
        }
    }
    return std::nullopt;
}

} // namespace

IntuitionisticResult intuitionistic_valid(const FormulaPtr& f, bool want_countermodel) {
    Prover prover;
    bool valid = prover.prove_formula(f);
    IntuitionisticResult result{valid, std::nullopt};
    if (!valid && want_countermodel) result.countermodel = search_countermodel(f);
    return result;
}

// ---------------------------------------------------------------------------
// Bounded constructive search

SearchOutcome SearchOutcome::known(std::uint64_t witness) {
    SearchOutcome o;
    o.kind_ = Kind::known;
    o.value_ = witness;
    return o;
}
SearchOutcome SearchOutcome::refuted(std::string marker) {
    SearchOutcome o;
    o.kind_ = Kind::refuted;
    o.marker_ = std::move(marker);
    return o;
}
SearchOutcome SearchOutcome::unknown(std::uint64_t budget_spent) {
    SearchOutcome o;
    o.kind_ = Kind::unknown;
    o.value_ = budget_spent;
    return o;
}
std::uint64_t SearchOutcome::witness() const {
    if (kind_ != Kind::known) throw Error("SearchOutcome: no witness");
    return value_;
}
std::uint64_t SearchOutcome::budget_spent() const {
    if (kind_ != Kind::unknown) throw Error("SearchOutcome: not an unknown");
    return value_;
}
const std::string& SearchOutcome::refutation() const {
    if (kind_ != Kind::refuted) throw Error("SearchOutcome: not a refutation");
    return marker_;
}

SearchOutcome bounded_search(const std::function<bool(std::uint64_t)>& pred,
                             std::uint64_t bound, bool finite_domain) {
    for (std::uint64_t k = 0; k < bound; ++k)
        if (pred(k)) return SearchOutcome::known(k);
    if (finite_domain)
        return SearchOutcome::refuted("exhausted the finite domain [0, " +
                                      std::to_string(bound) + ")");
    return SearchOutcome::unknown(bound);
}

} // namespace constructive::logic
