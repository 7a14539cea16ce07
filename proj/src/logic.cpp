#include "fmlab/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace fmlab::logic {

void Signature::validate() const {
    std::set<std::string> seen;
    auto check = [&seen](const std::string& name) {
        if (name.empty()) throw ConfigError("empty symbol name in signature");
        if (!seen.insert(name).second)
            throw ConfigError("duplicate symbol name '" + name + "' in signature");
    };
    for (const auto& [name, arity] : relations) {
        check(name);
        if (arity == 0) throw ConfigError("relation '" + name + "' has arity 0");
    }
    for (const auto& [name, arity] : functions) {
        check(name);
        if (arity == 0) throw ConfigError("function '" + name + "' has arity 0");
    }
    for (const auto& name : constants) check(name);
}

std::optional<unsigned> Signature::relation_arity(const std::string& name) const {
    for (const auto& [n, a] : relations)
        if (n == name) return a;
    return std::nullopt;
}

std::optional<unsigned> Signature::function_arity(const std::string& name) const {
    for (const auto& [n, a] : functions)
        if (n == name) return a;
    return std::nullopt;
}

bool Signature::has_constant(const std::string& name) const {
    return std::find(constants.begin(), constants.end(), name) != constants.end();
}

bool Signature::has_symbol(const std::string& name) const {
    return relation_arity(name) || function_arity(name) || has_constant(name);
}

// ── Term / Formula constructors ─────────────────────────────────────────────

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::constant(std::string name) {
    Term t;
    t.kind_ = Kind::Constant;
    t.name_ = std::move(name);
    return t;
}

Term Term::apply(std::string function, std::vector<Term> args) {
    Term t;
    t.kind_ = Kind::Apply;
    t.name_ = std::move(function);
    t.args_ = std::move(args);
    return t;
}

Term Term::literal(Element e) {
    Term t;
    t.kind_ = Kind::Literal;
    t.element_ = e;
    return t;
}

bool Term::operator==(const Term& o) const {
    return kind_ == o.kind_ && name_ == o.name_ && element_ == o.element_ && args_ == o.args_;
}

Formula Formula::relation(std::string name, std::vector<Term> terms) {
    Formula f;
    f.kind_ = Kind::Relation;
    f.name_ = std::move(name);
    f.terms_ = std::move(terms);
    return f;
}

Formula Formula::equality(Term lhs, Term rhs) {
    Formula f;
    f.kind_ = Kind::Equality;
    f.terms_ = {std::move(lhs), std::move(rhs)};
    return f;
}

Formula Formula::negation(Formula f) {
    Formula r;
    r.kind_ = Kind::Negation;
    r.children_.push_back(std::move(f));
    return r;
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    Formula r;
    r.kind_ = Kind::Conjunction;
    r.children_.push_back(std::move(lhs));
    r.children_.push_back(std::move(rhs));
    return r;
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    Formula r;
    r.kind_ = Kind::Disjunction;
    r.children_.push_back(std::move(lhs));
    r.children_.push_back(std::move(rhs));
    return r;
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    Formula r;
    r.kind_ = Kind::Implication;
    r.children_.push_back(std::move(lhs));
    r.children_.push_back(std::move(rhs));
    return r;
}

Formula Formula::existential(std::string var, Formula body) {
    Formula r;
    r.kind_ = Kind::Existential;
    r.name_ = std::move(var);
    r.children_.push_back(std::move(body));
    return r;
}

Formula Formula::universal(std::string var, Formula body) {
    Formula r;
    r.kind_ = Kind::Universal;
    r.name_ = std::move(var);
    r.children_.push_back(std::move(body));
    return r;
}

bool Formula::operator==(const Formula& o) const {
    return kind_ == o.kind_ && name_ == o.name_ && terms_ == o.terms_ && children_ == o.children_;
}

// ── Lexer ───────────────────────────────────────────────────────────────────

namespace {

enum class Tok {
    Ident, Integer, LParen, RParen, Comma, Dot, Bang, Amp, Pipe, Arrow,
    Eq, Lt, Plus, Star, LAngle, RAngle, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), start});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Integer, s.substr(i, j - i), start});
            i = j;
            continue;
        }
        // UTF-8 angle brackets for element designators: ⟨ = E2 9F A8, ⟩ = E2 9F A9
        if (static_cast<unsigned char>(c) == 0xE2) {
            if (i + 2 < n && static_cast<unsigned char>(s[i + 1]) == 0x9F) {
                auto b3 = static_cast<unsigned char>(s[i + 2]);
                if (b3 == 0xA8) {
                    out.push_back({Tok::LAngle, "⟨", start});
                    i += 3;
                    continue;
                }
                if (b3 == 0xA9) {
                    out.push_back({Tok::RAngle, "⟩", start});
                    i += 3;
                    continue;
                }
            }
            throw ParseError("unexpected byte sequence", start);
        }
        switch (c) {
            case '(': out.push_back({Tok::LParen, "(", start}); ++i; break;
            case ')': out.push_back({Tok::RParen, ")", start}); ++i; break;
            case ',': out.push_back({Tok::Comma, ",", start}); ++i; break;
            case '.': out.push_back({Tok::Dot, ".", start}); ++i; break;
            case '!': out.push_back({Tok::Bang, "!", start}); ++i; break;
            case '&': out.push_back({Tok::Amp, "&", start}); ++i; break;
            case '|': out.push_back({Tok::Pipe, "|", start}); ++i; break;
            case '=': out.push_back({Tok::Eq, "=", start}); ++i; break;
            case '<': out.push_back({Tok::Lt, "<", start}); ++i; break;
            case '+': out.push_back({Tok::Plus, "+", start}); ++i; break;
            case '*': out.push_back({Tok::Star, "*", start}); ++i; break;
            case '-':
                if (i + 1 < n && s[i + 1] == '>') {
                    out.push_back({Tok::Arrow, "->", start});
                    i += 2;
                } else {
                    throw ParseError("unexpected '-'", start);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }
    out.push_back({Tok::End, "", n});
    return out;
}

// ── Parser ──────────────────────────────────────────────────────────────────

class Parser {
public:
    Parser(std::vector<Token> tokens, const Signature& sig)
        : toks_(std::move(tokens)), sig_(sig) {}

    Formula parse_formula_top() {
        Formula f = formula();
        expect(Tok::End, "end of input");
        return f;
    }

    Term parse_term_top() {
        Term t = term();
        expect(Tok::End, "end of input");
        return t;
    }

private:
    std::vector<Token> toks_;
    const Signature& sig_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }

    bool accept(Tok k) {
        if (at(k)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(Tok k, const char* what) {
        if (!accept(k)) throw ParseError(std::string("expected ") + what, peek().pos);
    }

    bool at_keyword(const char* kw) const {
        return peek().kind == Tok::Ident && peek().text == kw;
    }

    Formula formula() {
        if (at_keyword("forall") || at_keyword("exists")) {
            bool universal = peek().text == "forall";
            advance();
            if (!at(Tok::Ident)) throw ParseError("expected variable after quantifier", peek().pos);
            std::string var = advance().text;
            if (var == "forall" || var == "exists")
                throw ParseError("'" + var + "' is reserved", toks_[pos_ - 1].pos);
            if (sig_.has_symbol(var))
                throw ParseError("quantified variable '" + var + "' clashes with a declared symbol",
                                 toks_[pos_ - 1].pos);
            expect(Tok::Dot, "'.' after quantified variable");
            Formula body = formula();
            return universal ? Formula::universal(var, std::move(body))
                             : Formula::existential(var, std::move(body));
        }
        return implication();
    }

    Formula implication() {
        Formula lhs = disjunction();
        if (accept(Tok::Arrow)) {
            Formula rhs = implication();  // right-associative
            return Formula::implication(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (accept(Tok::Pipe)) f = Formula::disjunction(std::move(f), conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (accept(Tok::Amp)) f = Formula::conjunction(std::move(f), unary());
        return f;
    }

    Formula unary() {
        if (accept(Tok::Bang)) return Formula::negation(unary());
        if (at(Tok::LParen)) {
            // "(" opens either a subformula or a parenthesized term; the two
            // readings never both succeed, so try formula first and fall back.
            std::size_t save = pos_;
            ParseError as_formula_error("", 0);
            try {
                advance();
                Formula f = formula();
                expect(Tok::RParen, "')'");
                return f;
            } catch (const ParseError& e) {
                as_formula_error = e;
            }
            pos_ = save;
            try {
                return atom();
            } catch (const ParseError& e) {
                throw e.position() >= as_formula_error.position() ? e : as_formula_error;
            }
        }
        return atom();
    }

    Formula atom() {
        if (at(Tok::Ident) && !at_keyword("forall") && !at_keyword("exists")) {
            auto rel = sig_.relation_arity(peek().text);
            if (rel && toks_[pos_ + 1].kind == Tok::LParen) {
                const Token& name_tok = advance();
                advance();  // (
                std::vector<Term> args;
                args.push_back(term());
                while (accept(Tok::Comma)) args.push_back(term());
                expect(Tok::RParen, "')'");
                if (args.size() != *rel)
                    throw ParseError("arity mismatch: relation '" + name_tok.text + "' expects " +
                                         std::to_string(*rel) + " arguments, got " +
                                         std::to_string(args.size()),
                                     name_tok.pos);
                return Formula::relation(name_tok.text, std::move(args));
            }
        }
        Term lhs = term();
        if (accept(Tok::Eq)) return Formula::equality(std::move(lhs), term());
        if (at(Tok::Lt)) {
            const Token& op = advance();
            auto rel = sig_.relation_arity("<");
            if (!rel || *rel != 2)
                throw ParseError("'<' used but no binary relation '<' is declared", op.pos);
            Term rhs = term();
            return Formula::relation("<", {std::move(lhs), std::move(rhs)});
        }
        throw ParseError("expected '=' or '<' after term", peek().pos);
    }

    Term term() {
        Term t = summand();
        while (at(Tok::Plus)) {
            const Token& op = advance();
            auto fn = sig_.function_arity("+");
            if (!fn || *fn != 2)
                throw ParseError("'+' used but no binary function '+' is declared", op.pos);
            Term rhs = summand();
            t = Term::apply("+", {std::move(t), std::move(rhs)});
        }
        return t;
    }

    Term summand() {
        Term t = factor();
        while (at(Tok::Star)) {
            const Token& op = advance();
            auto fn = sig_.function_arity("*");
            if (!fn || *fn != 2)
                throw ParseError("'*' used but no binary function '*' is declared", op.pos);
            Term rhs = factor();
            t = Term::apply("*", {std::move(t), std::move(rhs)});
        }
        return t;
    }

    Term factor() {
        if (accept(Tok::LParen)) {
            Term t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at(Tok::LAngle)) {
            advance();
            if (!at(Tok::Integer)) throw ParseError("expected element index in designator", peek().pos);
            const Token& num = advance();
            expect(Tok::RAngle, "'⟩'");
            unsigned long long value = std::stoull(num.text);
            if (value > 0xFFFFFFFFull) throw ParseError("element designator out of range", num.pos);
            return Term::literal(static_cast<Element>(value));
        }
        if (!at(Tok::Ident)) throw ParseError("expected term", peek().pos);
        const Token& id = advance();
        if (id.text == "forall" || id.text == "exists")
            throw ParseError("'" + id.text + "' is reserved", id.pos);
        if (auto fn = sig_.function_arity(id.text)) {
            expect(Tok::LParen, "'(' after function symbol");
            std::vector<Term> args;
            args.push_back(term());
            while (accept(Tok::Comma)) args.push_back(term());
            expect(Tok::RParen, "')'");
            if (args.size() != *fn)
                throw ParseError("arity mismatch: function '" + id.text + "' expects " +
                                     std::to_string(*fn) + " arguments, got " +
                                     std::to_string(args.size()),
                                 id.pos);
            return Term::apply(id.text, std::move(args));
        }
        if (sig_.relation_arity(id.text))
            throw ParseError("relation symbol '" + id.text + "' used as a term", id.pos);
        if (sig_.has_constant(id.text)) return Term::constant(id.text);
        return Term::variable(id.text);
    }
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
    return Parser(lex(text), sig).parse_formula_top();
}

Term parse_term(const std::string& text, const Signature& sig) {
    return Parser(lex(text), sig).parse_term_top();
}

// ── Printer ─────────────────────────────────────────────────────────────────
// Levels: quantifier 0, implication 1, disjunction 2, conjunction 3, unary 4.
// Term levels: sum 0, product 1, factor 2.

namespace {

int term_level(const Term& t) {
    if (t.kind() == Term::Kind::Apply) {
        if (t.name() == "+" && t.args().size() == 2) return 0;
        if (t.name() == "*" && t.args().size() == 2) return 1;
    }
    return 2;
}

void print_term(std::ostringstream& out, const Term& t, int min_level) {
    int level = term_level(t);
    if (level < min_level) {
        out << "(";
        print_term(out, t, 0);
        out << ")";
        return;
    }
    switch (t.kind()) {
        case Term::Kind::Variable:
        case Term::Kind::Constant:
            out << t.name();
            break;
        case Term::Kind::Literal:
            out << "⟨" << t.element() << "⟩";
            break;
        case Term::Kind::Apply:
            if (level == 0) {
                print_term(out, t.args()[0], 0);
                out << " + ";
                print_term(out, t.args()[1], 1);
            } else if (level == 1) {
                print_term(out, t.args()[0], 1);
                out << " * ";
                print_term(out, t.args()[1], 2);
            } else {
                out << t.name() << "(";
                for (std::size_t i = 0; i < t.args().size(); ++i) {
                    if (i) out << ", ";
                    print_term(out, t.args()[i], 0);
                }
                out << ")";
            }
            break;
    }
}

int formula_level(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Existential:
        case Formula::Kind::Universal: return 0;
        case Formula::Kind::Implication: return 1;
        case Formula::Kind::Disjunction: return 2;
        case Formula::Kind::Conjunction: return 3;
        default: return 4;
    }
}

void print_formula(std::ostringstream& out, const Formula& f, int min_level) {
    int level = formula_level(f);
    if (level < min_level) {
        out << "(";
        print_formula(out, f, 0);
        out << ")";
        return;
    }
    switch (f.kind()) {
        case Formula::Kind::Relation:
            if (f.name() == "<" && f.terms().size() == 2) {
                print_term(out, f.terms()[0], 0);
                out << " < ";
                print_term(out, f.terms()[1], 0);
            } else {
                out << f.name() << "(";
                for (std::size_t i = 0; i < f.terms().size(); ++i) {
                    if (i) out << ", ";
                    print_term(out, f.terms()[i], 0);
                }
                out << ")";
            }
            break;
        case Formula::Kind::Equality:
            print_term(out, f.terms()[0], 0);
            out << " = ";
            print_term(out, f.terms()[1], 0);
            break;
        case Formula::Kind::Negation:
            out << "!";
            print_formula(out, f.child(0), 4);
            break;
        case Formula::Kind::Conjunction:
            print_formula(out, f.child(0), 3);
            out << " & ";
            print_formula(out, f.child(1), 4);
            break;
        case Formula::Kind::Disjunction:
            print_formula(out, f.child(0), 2);
            out << " | ";
            print_formula(out, f.child(1), 3);
            break;
        case Formula::Kind::Implication:
            print_formula(out, f.child(0), 2);
            out << " -> ";
            print_formula(out, f.child(1), 1);
            break;
        case Formula::Kind::Existential:
        case Formula::Kind::Universal:
            out << (f.kind() == Formula::Kind::Universal ? "forall " : "exists ") << f.name()
                << ". ";
            print_formula(out, f.child(0), 0);
            break;
    }
}

}  // namespace

std::string print(const Formula& f) {
    std::ostringstream out;
    print_formula(out, f, 0);
    return out.str();
}

std::string print(const Term& t) {
    std::ostringstream out;
    print_term(out, t, 0);
    return out.str();
}

// ── Free variables / substitution ───────────────────────────────────────────

namespace {

void collect_term_vars(const Term& t, const std::map<std::string, int>& bound,
                       std::vector<std::string>& order, std::set<std::string>& seen) {
    switch (t.kind()) {
        case Term::Kind::Variable: {
            auto it = bound.find(t.name());
            bool is_bound = it != bound.end() && it->second > 0;
            if (!is_bound && seen.insert(t.name()).second) order.push_back(t.name());
            break;
        }
        case Term::Kind::Apply:
            for (const auto& a : t.args()) collect_term_vars(a, bound, order, seen);
            break;
        default:
            break;
    }
}

void collect_free(const Formula& f, std::map<std::string, int>& bound,
                  std::vector<std::string>& order, std::set<std::string>& seen) {
    switch (f.kind()) {
        case Formula::Kind::Relation:
        case Formula::Kind::Equality:
            for (const auto& t : f.terms()) collect_term_vars(t, bound, order, seen);
            break;
        case Formula::Kind::Existential:
        case Formula::Kind::Universal:
            ++bound[f.name()];
            collect_free(f.child(0), bound, order, seen);
            --bound[f.name()];
            break;
        default:
            for (std::size_t i = 0; i < f.child_count(); ++i)
                collect_free(f.child(i), bound, order, seen);
            break;
    }
}

void collect_quantified(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Existential:
        case Formula::Kind::Universal:
            out.insert(f.name());
            collect_quantified(f.child(0), out);
            break;
        default:
            for (std::size_t i = 0; i < f.child_count(); ++i) collect_quantified(f.child(i), out);
            break;
    }
}

Term substitute_term(const Term& t, const std::map<std::string, Element>& binding) {
    switch (t.kind()) {
        case Term::Kind::Variable: {
            auto it = binding.find(t.name());
            if (it != binding.end()) return Term::literal(it->second);
            return t;
        }
        case Term::Kind::Apply: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const auto& a : t.args()) args.push_back(substitute_term(a, binding));
            return Term::apply(t.name(), std::move(args));
        }
        default:
            return t;
    }
}

Formula substitute_formula(const Formula& f, const std::map<std::string, Element>& binding) {
    switch (f.kind()) {
        case Formula::Kind::Relation: {
            std::vector<Term> terms;
            terms.reserve(f.terms().size());
            for (const auto& t : f.terms()) terms.push_back(substitute_term(t, binding));
            return Formula::relation(f.name(), std::move(terms));
        }
        case Formula::Kind::Equality:
            return Formula::equality(substitute_term(f.terms()[0], binding),
                                     substitute_term(f.terms()[1], binding));
        case Formula::Kind::Negation:
            return Formula::negation(substitute_formula(f.child(0), binding));
        case Formula::Kind::Conjunction:
            return Formula::conjunction(substitute_formula(f.child(0), binding),
                                        substitute_formula(f.child(1), binding));
        case Formula::Kind::Disjunction:
            return Formula::disjunction(substitute_formula(f.child(0), binding),
                                        substitute_formula(f.child(1), binding));
        case Formula::Kind::Implication:
            return Formula::implication(substitute_formula(f.child(0), binding),
                                        substitute_formula(f.child(1), binding));
        case Formula::Kind::Existential:
            return Formula::existential(f.name(), substitute_formula(f.child(0), binding));
        case Formula::Kind::Universal:
            return Formula::universal(f.name(), substitute_formula(f.child(0), binding));
    }
    throw EvalError("unreachable formula kind");
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
    std::map<std::string, int> bound;
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_free(f, bound, order, seen);
    return order;
}

Formula substitute_params(const Formula& f, const std::map<std::string, Element>& binding) {
    std::set<std::string> quantified;
    collect_quantified(f, quantified);
    for (const auto& [var, value] : binding) {
        (void)value;
        if (quantified.count(var))
            throw EvalError("capture attempt: '" + var + "' is quantified in the formula");
    }
    return substitute_formula(f, binding);
}

}  // namespace fmlab::logic
