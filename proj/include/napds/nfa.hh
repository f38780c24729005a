// Finite automata over interned symbols.
//
// A published Nfa never carries epsilon transitions; NfaBuilder accepts them
// and removes them by closure in build().
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "napds/symbols.hh"

namespace napds {

using StateId = std::uint32_t;

inline constexpr std::size_t kDefaultDeterminizeCap = 1'000'000;

struct Transition {
    SymbolId symbol;
    StateId target;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

class Nfa {
public:
    /// Validates the invariants: endpoints declared, labels in the alphabet.
    /// Transition lists are sorted and deduplicated.
    Nfa(std::vector<SymbolId> alphabet, StateId initial, std::vector<bool> finals,
        std::vector<std::vector<Transition>> delta);

    std::size_t num_states() const noexcept { return finals_.size(); }
    StateId initial() const noexcept { return initial_; }
    bool is_final(StateId s) const { return finals_.at(s); }
    const std::vector<bool>& finals() const noexcept { return finals_; }
    /// Sorted, duplicate free.
    const std::vector<SymbolId>& alphabet() const noexcept { return alphabet_; }
    bool in_alphabet(SymbolId sym) const;
    /// Sorted by (symbol, target).
    std::span<const Transition> transitions(StateId s) const { return delta_.at(s); }
    std::size_t num_transitions() const;

    /// Successors of s on sym.
    std::vector<StateId> post(StateId s, SymbolId sym) const;

private:
    std::vector<SymbolId> alphabet_;
    StateId initial_;
    std::vector<bool> finals_;
    std::vector<std::vector<Transition>> delta_;
};

class NfaBuilder {
public:
    explicit NfaBuilder(std::vector<SymbolId> alphabet) : alphabet_(std::move(alphabet)) {}

    StateId add_state(bool final = false);
    void set_final(StateId s, bool final = true);
    void set_initial(StateId s) { initial_ = s; }
    void add_transition(StateId from, SymbolId sym, StateId to);
    void add_epsilon(StateId from, StateId to);
    std::size_t num_states() const noexcept { return finals_.size(); }

    Nfa build() const;

private:
    std::vector<SymbolId> alphabet_;
    StateId initial_ = 0;
    std::vector<bool> finals_;
    std::vector<std::vector<Transition>> delta_;
    std::vector<std::vector<StateId>> eps_;
};

/// Membership by forward subset simulation. Throws InputError if the word
/// uses a symbol outside the automaton's alphabet.
bool nfa_accepts(const Nfa& nfa, std::span<const SymbolId> word);

bool nfa_is_empty(const Nfa& nfa);

/// Subset construction restricted to reachable subsets. The result is a
/// complete deterministic automaton (a sink is added when needed).
Nfa determinize(const Nfa& nfa, std::size_t max_states = kDefaultDeterminizeCap);

/// A shortest word accepted by exactly one of the automata, if any.
/// Both automata must share an alphabet (ContractError otherwise).
std::optional<Word> nfa_difference_witness(const Nfa& a, const Nfa& b,
                                           std::size_t max_states = kDefaultDeterminizeCap);

bool nfa_equivalent(const Nfa& a, const Nfa& b,
                    std::size_t max_states = kDefaultDeterminizeCap);

/// Keeps only states that are reachable and co-reachable (plus the initial
/// state). Language preserving.
Nfa trim(const Nfa& nfa);

/// Graphviz rendering; symbol names come from the table.
std::string to_dot(const Nfa& nfa, const SymbolTable& symbols, std::string_view name);

}  // namespace napds
