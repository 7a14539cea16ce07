#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmlab/errors.hpp"

namespace fmlab::logic {

using Element = std::uint32_t;

// ── Signature ───────────────────────────────────────────────────────────────
// Relation and function symbols with positive arities, plus constant names.
// Symbol names must be pairwise distinct across all three kinds.

struct Signature {
    std::vector<std::pair<std::string, unsigned>> relations;
    std::vector<std::pair<std::string, unsigned>> functions;
    std::vector<std::string> constants;

    // Throws ConfigError on duplicate names or non-positive arity.
    void validate() const;

    std::optional<unsigned> relation_arity(const std::string& name) const;
    std::optional<unsigned> function_arity(const std::string& name) const;
    bool has_constant(const std::string& name) const;
    bool has_symbol(const std::string& name) const;
};

// ── Terms ───────────────────────────────────────────────────────────────────
// Variable, declared constant, function application, or an element
// designator ⟨k⟩. Designators denote a fixed element of a structure; they
// arise from parameter substitution and are printed as ⟨k⟩.

class Term {
public:
    enum class Kind { Variable, Constant, Apply, Literal };

    static Term variable(std::string name);
    static Term constant(std::string name);
    static Term apply(std::string function, std::vector<Term> args);
    static Term literal(Element e);

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    Element element() const noexcept { return element_; }
    const std::vector<Term>& args() const noexcept { return args_; }

    bool operator==(const Term& o) const;

private:
    Kind kind_ = Kind::Variable;
    std::string name_;
    Element element_ = 0;
    std::vector<Term> args_;
};

// ── Formulas ────────────────────────────────────────────────────────────────
// Single-sorted first-order logic with equality. Immutable value type;
// structural equality.

class Formula {
public:
    enum class Kind {
        Relation,     // name_, terms_
        Equality,     // terms_[0] = terms_[1]
        Negation,     // !children_[0]
        Conjunction,  // children_[0] & children_[1]
        Disjunction,  // children_[0] | children_[1]
        Implication,  // children_[0] -> children_[1]
        Existential,  // exists name_. children_[0]
        Universal     // forall name_. children_[0]
    };

    static Formula relation(std::string name, std::vector<Term> terms);
    static Formula equality(Term lhs, Term rhs);
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula existential(std::string var, Formula body);
    static Formula universal(std::string var, Formula body);

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    const Formula& child(std::size_t i) const { return children_[i]; }
    std::size_t child_count() const noexcept { return children_.size(); }

    bool operator==(const Formula& o) const;

private:
    Kind kind_ = Kind::Equality;
    std::string name_;            // relation name or bound variable
    std::vector<Term> terms_;     // atom arguments
    std::vector<Formula> children_;
};

// ── Operations ──────────────────────────────────────────────────────────────

// Parses the textual formula language:
//
//   formula     := "forall" var "." formula | "exists" var "." formula | implication
//   implication := disjunction [ "->" implication ]
//   disjunction := conjunction { "|" conjunction }
//   conjunction := unary { "&" unary }
//   unary       := "!" unary | "(" formula ")" | atom
//   atom        := relname "(" term {"," term} ")" | term ("=" | "<") term
//   term        := summand { "+" summand }
//   summand     := factor { "*" factor }
//   factor      := var | constname | funcname "(" term {"," term} ")" | "(" term ")"
//
// "<" is sugar for the binary relation "<" when declared; infix "+"/"*" are
// sugar for binary functions of those names when declared. Identifiers are
// [A-Za-z_][A-Za-z0-9_]*, whitespace insignificant. Throws ParseError with
// the byte offset of the offending token.
Formula parse_formula(const std::string& text, const Signature& sig);
Term parse_term(const std::string& text, const Signature& sig);

// Grammar-conformant text; parse_formula(print(f)) == f.
std::string print(const Formula& f);
std::string print(const Term& t);

// Free variables in first-occurrence order.
std::vector<std::string> free_variables(const Formula& f);

// Replaces free occurrences of each binding key by an element designator.
// Throws EvalError if a key is quantified anywhere in f (capture attempt).
Formula substitute_params(const Formula& f, const std::map<std::string, Element>& binding);

}  // namespace fmlab::logic
