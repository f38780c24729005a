// Spine types, typed grammars G^x and the worklist construction of an NFA
// for a CFG whose strong iterative pairs are very degenerate.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "napds/cfg.hh"
#include "napds/nfa.hh"

namespace napds {

inline constexpr std::size_t kDefaultMarkedCap = 8;
inline constexpr std::size_t kDefaultErStates = 10'000;

struct MarkedSymbol {
    enum class Kind : std::uint8_t { binary, terminal, leaf };
    Kind kind;
    NontermId head = 0;  // binary and terminal marks
    NontermId left = 0, right = 0;  // binary marks
    std::uint8_t dir = 0;  // 1: the path enters `left`, 2: it enters `right`
    SymbolId terminal = 0;  // terminal marks and leaves

    static MarkedSymbol binary(NontermId a, NontermId b, NontermId c, std::uint8_t k) {
        return {Kind::binary, a, b, c, k, 0};
    }
    static MarkedSymbol term(NontermId a, SymbolId t) { return {Kind::terminal, a, 0, 0, 0, t}; }
    static MarkedSymbol leaf(SymbolId t) { return {Kind::leaf, 0, 0, 0, 0, t}; }

    friend auto operator<=>(const MarkedSymbol&, const MarkedSymbol&) = default;
};

/// Binary marks in production order (direction 1 then 2), then terminal
/// marks, then one leaf per terminal.
std::vector<MarkedSymbol> marked_alphabet(const Cfg& cnf);

std::string marked_name(const MarkedSymbol& m, const Cfg& g, const SymbolTable& symbols);

/// Indices into a marked alphabet; no index occurs twice.
using SpineType = std::vector<std::uint32_t>;

/// All repetition-free nonempty sequences over {0..m-1}, length first, then
/// lexicographic. Throws ResourceLimitError if m exceeds the cap.
std::vector<SpineType> enumerate_types(std::size_t m, std::size_t cap = kDefaultMarkedCap);

/// (a1 u a1 L* a1)...(as u as L* as) over symbol ids 0..m-1; 2|x|+1 states.
Nfa type_nfa(const SpineType& x, std::size_t m);

/// G^x (not normalised). Nonterminals: the plain copy of g, then A_q for
/// every type_nfa state q, then A_eps.
Cfg typed_grammar(const Cfg& cnf, std::span<const MarkedSymbol> alphabet, const SpineType& x);

struct ErOptions {
    std::size_t max_marked = kDefaultMarkedCap;
    std::size_t max_states = kDefaultErStates;
};

/// The spine-type sets of words over a fixed grammar, as bitsets over the
/// types x with nonempty L(G^x). Types are restricted to those that can be
/// spines at all: they start at the start symbol, each mark's entered child
/// heads the next mark, and the last one is a terminal mark.
class SpineTypeIndex {
public:
    SpineTypeIndex(const Cfg& cnf, const ErOptions& options = {});

    const std::vector<SpineType>& types() const noexcept { return types_; }
    const std::vector<MarkedSymbol>& alphabet() const noexcept { return alphabet_; }

    /// T(w); T(eps) is empty.
    std::vector<bool> types_of(std::span<const SymbolId> w) const;

private:
    std::vector<MarkedSymbol> alphabet_;
    std::vector<SpineType> types_;
    std::vector<Cfg> typed_cnf_;
};

bool spine_types_equal(const Cfg& cnf, std::span<const SymbolId> w, std::span<const SymbolId> w2,
                       const ErOptions& options = {});

/// Worklist Myhill-Nerode construction keyed by spine-type sets. q_eps is
/// never merged with another word; a nonempty dead word lands in the state
/// whose type set is empty. Throws ResourceLimitError past max_states and
/// PreconditionViolation when a merge joins a member with a non-member.
Nfa er_nfa(const Cfg& cnf, const ErOptions& options = {});

}  // namespace napds
