#include "fmlab/structure.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace fmlab::structures {

namespace {

// Flat bitset only when the table fits comfortably in memory (8 MiB).
constexpr std::size_t kFlatBitBudget = std::size_t{1} << 26;

std::size_t pow_checked(std::size_t base, unsigned exp, std::size_t cap) {
    std::size_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

}  // namespace

RelationTable RelationTable::explicit_set(unsigned arity, std::size_t universe_size,
                                          std::vector<std::vector<Element>> tuples) {
    RelationTable t;
    t.arity_ = arity;
    t.universe_size_ = universe_size;
    for (const auto& tup : tuples) {
        if (tup.size() != arity)
            throw ConfigError("relation tuple has wrong arity");
        for (Element e : tup)
            if (e >= universe_size) throw ConfigError("relation tuple entry out of universe");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    t.tuples_ = std::move(tuples);
    std::size_t flat_size = pow_checked(universe_size, arity, kFlatBitBudget);
    if (flat_size <= kFlatBitBudget) {
        t.flat_ = DynBitset(flat_size);
        for (const auto& tup : t.tuples_) {
            std::size_t idx = 0;
            for (Element e : tup) idx = idx * universe_size + e;
            t.flat_.set(idx);
        }
        t.has_flat_ = true;
    }
    return t;
}

RelationTable RelationTable::computed(unsigned arity,
                                      std::function<bool(std::span<const Element>)> predicate) {
    RelationTable t;
    t.arity_ = arity;
    t.predicate_ = std::move(predicate);
    return t;
}

bool RelationTable::contains(std::span<const Element> tuple) const {
    if (predicate_) return predicate_(tuple);
    if (has_flat_) {
        std::size_t idx = 0;
        for (Element e : tuple) idx = idx * universe_size_ + e;
        return flat_.test(idx);
    }
    std::vector<Element> key(tuple.begin(), tuple.end());
    return std::binary_search(tuples_.begin(), tuples_.end(), key);
}

const std::vector<std::vector<Element>>& RelationTable::tuples() const {
    if (predicate_) throw ConfigError("computed relation has no stored tuple set");
    return tuples_;
}

std::vector<std::vector<Element>> RelationTable::enumerate(std::size_t universe_size,
                                                           std::size_t budget) const {
    if (!predicate_) return tuples_;
    if (pow_checked(universe_size, arity_, budget) > budget)
        throw ConfigError("relation too large to enumerate");
    std::vector<std::vector<Element>> out;
    std::vector<Element> tuple(arity_, 0);
    while (true) {
        if (predicate_(tuple)) out.push_back(tuple);
        int i = static_cast<int>(arity_) - 1;
        while (i >= 0 && ++tuple[static_cast<std::size_t>(i)] == universe_size) {
            tuple[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

FunctionTable FunctionTable::explicit_table(unsigned arity, std::size_t universe_size,
                                            std::vector<Element> row_major) {
    FunctionTable t;
    t.arity_ = arity;
    t.universe_size_ = universe_size;
    std::size_t expect = pow_checked(universe_size, arity, std::size_t{1} << 32);
    if (row_major.size() != expect)
        throw ConfigError("function table size does not match universe^arity");
    for (Element v : row_major)
        if (v >= universe_size) throw ConfigError("function value out of universe");
    t.table_ = std::move(row_major);
    return t;
}

FunctionTable FunctionTable::computed(unsigned arity,
                                      std::function<Element(std::span<const Element>)> fn) {
    FunctionTable t;
    t.arity_ = arity;
    t.fn_ = std::move(fn);
    return t;
}

Element FunctionTable::apply(std::span<const Element> args) const {
    if (fn_) return fn_(args);
    std::size_t idx = 0;
    for (Element e : args) idx = idx * universe_size_ + e;
    return table_[idx];
}

const std::vector<Element>& FunctionTable::table() const {
    if (fn_) throw ConfigError("computed function has no stored table");
    return table_;
}

// ── FiniteStructure ─────────────────────────────────────────────────────────

FiniteStructure::FiniteStructure(std::size_t universe_size, Signature sig)
    : universe_size_(universe_size), sig_(std::move(sig)) {
    if (universe_size_ == 0) throw ConfigError("universe must be non-empty");
    sig_.validate();
}

void FiniteStructure::add_relation(const std::string& name, RelationTable table) {
    if (frozen_) throw ConfigError("structure is frozen");
    auto arity = sig_.relation_arity(name);
    if (!arity) throw ConfigError("relation '" + name + "' not in signature");
    if (table.arity() != *arity) throw ConfigError("relation '" + name + "' arity mismatch");
    relations_[name] = std::move(table);
}

void FiniteStructure::add_function(const std::string& name, FunctionTable table) {
    if (frozen_) throw ConfigError("structure is frozen");
    auto arity = sig_.function_arity(name);
    if (!arity) throw ConfigError("function '" + name + "' not in signature");
    if (table.arity() != *arity) throw ConfigError("function '" + name + "' arity mismatch");
    functions_[name] = std::move(table);
}

void FiniteStructure::add_constant(const std::string& name, Element value) {
    if (frozen_) throw ConfigError("structure is frozen");
    if (!sig_.has_constant(name)) throw ConfigError("constant '" + name + "' not in signature");
    if (value >= universe_size_) throw ConfigError("constant '" + name + "' out of universe");
    constants_[name] = value;
}

void FiniteStructure::freeze() {
    for (const auto& [name, arity] : sig_.relations) {
        (void)arity;
        if (!relations_.count(name))
            throw ConfigError("relation '" + name + "' has no interpretation");
    }
    for (const auto& [name, arity] : sig_.functions) {
        (void)arity;
        if (!functions_.count(name))
            throw ConfigError("function '" + name + "' has no interpretation");
    }
    for (const auto& name : sig_.constants)
        if (!constants_.count(name))
            throw ConfigError("constant '" + name + "' has no interpretation");
    frozen_ = true;
}

const RelationTable* FiniteStructure::relation(const std::string& name) const {
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
}

const FunctionTable* FiniteStructure::function(const std::string& name) const {
    auto it = functions_.find(name);
    return it == functions_.end() ? nullptr : &it->second;
}

const Element* FiniteStructure::constant(const std::string& name) const {
    auto it = constants_.find(name);
    return it == constants_.end() ? nullptr : &it->second;
}

// ── JSON I/O ────────────────────────────────────────────────────────────────

FiniteStructure load_structure_json(const std::string& json_text, const Signature& sig) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.contains("universe_size") || !j["universe_size"].is_number_unsigned())
        throw ConfigError("structure file: missing or invalid universe_size");
    std::size_t n = j["universe_size"].get<std::size_t>();
    FiniteStructure M(n, sig);

    if (j.contains("relations")) {
        for (auto& [name, tuples_json] : j["relations"].items()) {
            auto arity = sig.relation_arity(name);
            if (!arity) throw ConfigError("structure file: unknown relation '" + name + "'");
            std::vector<std::vector<Element>> tuples;
            for (const auto& row : tuples_json) {
                std::vector<Element> t;
                for (const auto& v : row) {
                    auto x = v.get<std::uint64_t>();
                    if (x >= n) throw ConfigError("structure file: tuple entry out of range");
                    t.push_back(static_cast<Element>(x));
                }
                tuples.push_back(std::move(t));
            }
            M.add_relation(name, RelationTable::explicit_set(*arity, n, std::move(tuples)));
        }
    }
    if (j.contains("functions")) {
        for (auto& [name, fj] : j["functions"].items()) {
            auto arity = sig.function_arity(name);
            if (!arity) throw ConfigError("structure file: unknown function '" + name + "'");
            if (fj["arity"].get<unsigned>() != *arity)
                throw ConfigError("structure file: function '" + name + "' arity mismatch");
            std::vector<Element> table;
            for (const auto& v : fj["table"]) {
                auto x = v.get<std::uint64_t>();
                if (x >= n) throw ConfigError("structure file: function value out of range");
                table.push_back(static_cast<Element>(x));
            }
            M.add_function(name, FunctionTable::explicit_table(*arity, n, std::move(table)));
        }
    }
    if (j.contains("constants")) {
        for (auto& [name, v] : j["constants"].items()) {
            auto x = v.get<std::uint64_t>();
            if (x >= n) throw ConfigError("structure file: constant out of range");
            M.add_constant(name, static_cast<Element>(x));
        }
    }
    M.freeze();
    return M;
}

std::string save_structure_json(const FiniteStructure& M) {
    nlohmann::ordered_json j;
    j["universe_size"] = M.universe_size();
    j["relations"] = nlohmann::ordered_json::object();
    for (const auto& [name, table] : M.relations())
        j["relations"][name] = table.enumerate(M.universe_size());
    j["functions"] = nlohmann::ordered_json::object();
    for (const auto& [name, table] : M.functions()) {
        nlohmann::ordered_json fj;
        fj["arity"] = table.arity();
        if (table.is_explicit()) {
            fj["table"] = table.table();
        } else {
            std::vector<Element> flat;
            std::vector<Element> args(table.arity(), 0);
            std::size_t total = 1;
            for (unsigned i = 0; i < table.arity(); ++i) total *= M.universe_size();
            flat.reserve(total);
            for (std::size_t idx = 0; idx < total; ++idx) {
                std::size_t rest = idx;
                for (unsigned i = table.arity(); i-- > 0;) {
                    args[i] = static_cast<Element>(rest % M.universe_size());
                    rest /= M.universe_size();
                }
                flat.push_back(table.apply(args));
            }
            fj["table"] = flat;
        }
        j["functions"][name] = std::move(fj);
    }
    j["constants"] = nlohmann::ordered_json::object();
    for (const auto& [name, v] : M.constants()) j["constants"][name] = v;
    return j.dump(2);
}

}  // namespace fmlab::structures
