// Context-free grammars over interned terminals, Chomsky normal form
// conversion and CYK membership.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "napds/symbols.hh"

namespace napds {

using NontermId = std::uint32_t;

/// A body element: either a terminal (SymbolId) or a nonterminal (NontermId).
struct GSymbol {
    bool terminal;
    std::uint32_t id;

    static GSymbol term(SymbolId s) { return {true, s}; }
    static GSymbol nonterm(NontermId n) { return {false, n}; }

    friend auto operator<=>(const GSymbol&, const GSymbol&) = default;
};

struct Production {
    NontermId head;
    std::vector<GSymbol> body;  // empty body is an epsilon production

    friend auto operator<=>(const Production&, const Production&) = default;
};

class Cfg {
public:
    Cfg() = default;

    NontermId add_nonterminal(std::string name);
    void add_terminal(SymbolId sym);
    void add_production(NontermId head, std::vector<GSymbol> body);
    void set_start(NontermId start);

    std::size_t num_nonterminals() const noexcept { return names_.size(); }
    const std::string& nonterminal_name(NontermId n) const { return names_.at(n); }
    /// Sorted, duplicate free.
    const std::vector<SymbolId>& terminals() const noexcept { return terminals_; }
    bool has_terminal(SymbolId sym) const;
    const std::vector<Production>& productions() const noexcept { return productions_; }
    NontermId start() const noexcept { return start_; }

    /// CNF grammars record epsilon membership here instead of in a production.
    bool start_nullable() const noexcept { return start_nullable_; }
    bool is_cnf() const noexcept { return cnf_; }

    /// Flags an already CNF-shaped grammar as CNF. Throws ContractError if a
    /// body is not [N N] or [t].
    void mark_cnf(bool start_nullable);

    /// Throws ContractError on undeclared references.
    void validate() const;

private:
    std::vector<std::string> names_;
    std::vector<SymbolId> terminals_;
    std::vector<Production> productions_;
    NontermId start_ = 0;
    bool start_nullable_ = false;
    bool cnf_ = false;
};

/// Equivalent CNF grammar (epsilon tracked through the start flag, useless
/// symbols removed). Conversion order: epsilon productions, unit productions,
/// useless symbols, then terminal splitting and binarisation.
Cfg cfg_to_cnf(const Cfg& g);

/// CYK. Requires a CNF grammar (ContractError otherwise). Words over symbols
/// the grammar does not use are simply rejected.
bool cfg_member(const Cfg& cnf, std::span<const SymbolId> word);

/// Least-fixpoint productive marking on the start symbol.
bool cfg_is_empty(const Cfg& g);

/// Productive nonterminals (derive at least one terminal word).
std::vector<bool> productive_nonterminals(const Cfg& g);

/// Line-oriented text format: `A -> B C`, `A -> a`, `A -> eps`, `#` comments.
/// The first head is the start symbol; tokens that appear as heads are
/// nonterminals, every other token is a terminal interned in `symbols`.
Cfg parse_grammar(std::string_view text, SymbolTable& symbols);

std::string print_grammar(const Cfg& g, const SymbolTable& symbols);

}  // namespace napds
