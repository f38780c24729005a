// Write PDSs P_w(g) and their regular read languages (upward closures).
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "napds/cfg.hh"
#include "napds/napds.hh"
#include "napds/nfa.hh"
#include "napds/pds.hh"

namespace napds {

inline constexpr std::size_t kDefaultAntichainCap = 100'000;

/// R: one read symbol per (variable, value) and one KILL symbol per variable.
struct ReadAlphabet {
    std::vector<std::vector<SymbolId>> reads;  // [var][value]
    std::vector<SymbolId> kills;  // [var]

    /// Interns "r(v)" / "r(x=v)" and "KILL_<var>" into the instance table.
    static ReadAlphabet intern(const ParamInstance& inst);

    /// Sorted symbol list of R.
    std::vector<SymbolId> all() const;
};

struct ReadLanguage {
    VarId var;
    ValueId value;
    Nfa nfa;
};

/// P_w(g) plus, for every rule, the slave rule it stems from.
struct WritePds {
    Pds pds;
    std::vector<RuleId> origin;
    ControlId final_control;
};

/// Throws InputError when (var, value) is not declared.
WritePds build_write_pds(const ParamInstance& inst, const ReadAlphabet& r, VarId var,
                         ValueId value);

/// CNF grammar for L(P_w(g)).
Cfg write_language_cnf(const WritePds& wp);

bool is_subword(std::span<const SymbolId> small, std::span<const SymbolId> big);

/// Subword-minimal words of L(cnf); their upward closure is that of L(cnf).
/// Throws ResourceLimitError when an intermediate antichain exceeds the cap.
std::vector<Word> minimal_read_words(const Cfg& cnf, std::size_t max_antichain = kDefaultAntichainCap);

/// Union of R* a1 R* ... ak R* over the given words.
Nfa subword_closure_nfa(std::span<const Word> words, std::vector<SymbolId> alphabet);

ReadLanguage read_language_nfa(const ParamInstance& inst, const ReadAlphabet& r, VarId var,
                               ValueId value, std::size_t max_antichain = kDefaultAntichainCap);

/// Does the word have a scattered subword in L(cnf)?
bool closure_member(const Cfg& cnf, std::span<const SymbolId> word);

/// CNF grammar for the upward closure of L(cnf) over the given alphabet.
Cfg closure_grammar(const Cfg& cnf, const std::vector<SymbolId>& alphabet);

}  // namespace napds
