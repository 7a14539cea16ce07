#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fmlab/bitset.hpp"
#include "fmlab/logic.hpp"

namespace fmlab::structures {

using logic::Element;
using logic::Signature;

// Interpretation of one relation symbol. Two storage modes behind one
// membership interface: an explicit sorted tuple set (with a flat bitset
// fast path when universe^arity is small), or a computed predicate for
// relations too large to materialize (dense orders, arithmetic relations).
class RelationTable {
public:
    RelationTable() = default;

    static RelationTable explicit_set(unsigned arity, std::size_t universe_size,
                                      std::vector<std::vector<Element>> tuples);
    static RelationTable computed(unsigned arity,
                                  std::function<bool(std::span<const Element>)> predicate);

    unsigned arity() const noexcept { return arity_; }
    bool is_explicit() const noexcept { return !predicate_; }
    bool contains(std::span<const Element> tuple) const;

    // Explicit storage only (sorted, deduplicated).
    const std::vector<std::vector<Element>>& tuples() const;

    // Materializes the tuple set by scanning universe^arity; guarded by a
    // budget since computed relations can be huge. Test and I/O helper.
    std::vector<std::vector<Element>> enumerate(std::size_t universe_size,
                                                std::size_t budget = 1u << 24) const;

private:
    unsigned arity_ = 1;
    std::vector<std::vector<Element>> tuples_;
    DynBitset flat_;         // index = Σ tuple[i]·n^(arity-1-i)
    bool has_flat_ = false;
    std::size_t universe_size_ = 0;
    std::function<bool(std::span<const Element>)> predicate_;
};

// Total interpretation of one function symbol; same dual storage idea.
class FunctionTable {
public:
    FunctionTable() = default;

    static FunctionTable explicit_table(unsigned arity, std::size_t universe_size,
                                        std::vector<Element> row_major);
    static FunctionTable computed(unsigned arity,
                                  std::function<Element(std::span<const Element>)> fn);

    unsigned arity() const noexcept { return arity_; }
    bool is_explicit() const noexcept { return !fn_; }
    Element apply(std::span<const Element> args) const;
    const std::vector<Element>& table() const;

private:
    unsigned arity_ = 1;
    std::vector<Element> table_;  // row-major argument order
    std::size_t universe_size_ = 0;
    std::function<Element(std::span<const Element>)> fn_;
};

// Explicit finite structure over universe {0, ..., n-1}. Build with the
// add_* methods, then freeze(); frozen structures are immutable and safe
// to share across threads.
class FiniteStructure {
public:
    FiniteStructure(std::size_t universe_size, Signature sig);

    void add_relation(const std::string& name, RelationTable table);
    void add_function(const std::string& name, FunctionTable table);
    void add_constant(const std::string& name, Element value);

    // Validates that the tables cover exactly the signature and satisfy the
    // range/totality invariants. Throws ConfigError on violation.
    void freeze();

    std::size_t universe_size() const noexcept { return universe_size_; }
    const Signature& signature() const noexcept { return sig_; }

    const RelationTable* relation(const std::string& name) const;
    const FunctionTable* function(const std::string& name) const;
    const Element* constant(const std::string& name) const;

    const std::map<std::string, RelationTable>& relations() const { return relations_; }
    const std::map<std::string, FunctionTable>& functions() const { return functions_; }
    const std::map<std::string, Element>& constants() const { return constants_; }

private:
    std::size_t universe_size_;
    Signature sig_;
    std::map<std::string, RelationTable> relations_;
    std::map<std::string, FunctionTable> functions_;
    std::map<std::string, Element> constants_;
    bool frozen_ = false;
};

// JSON structure file format:
//   {"universe_size": n,
//    "relations": {name: [[t, ...], ...]},
//    "functions": {name: {"arity": k, "table": [v, ...]}},   // row-major
//    "constants": {name: v}}
FiniteStructure load_structure_json(const std::string& json_text, const Signature& sig);
std::string save_structure_json(const FiniteStructure& M);

}  // namespace fmlab::structures
