#include "napds/readlang.hh"

#include <algorithm>

#include "napds/errors.hh"

namespace napds {

ReadAlphabet ReadAlphabet::intern(const ParamInstance& inst) {
    ReadAlphabet r;
    const bool qualified = inst.variables.size() > 1;
    for (const Variable& v : inst.variables) {
        auto& row = r.reads.emplace_back();
        for (const std::string& g : v.values)
            row.push_back(inst.symbols->intern("r(" + (qualified ? v.name + "=" : "") + g + ")"));
        r.kills.push_back(inst.symbols->intern("KILL_" + v.name));
    }
    return r;
}

std::vector<SymbolId> ReadAlphabet::all() const {
    std::vector<SymbolId> out(kills);
    for (const auto& row : reads)
        out.insert(out.end(), row.begin(), row.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WritePds build_write_pds(const ParamInstance& inst, const ReadAlphabet& r, VarId var,
                         ValueId value) {
    if (var >= inst.variables.size() || value >= inst.variables[var].values.size())
        throw InputError("build_write_pds: undeclared variable/value pair");
    const NaPds& slave = inst.slave;
    WritePds out;
    Pds& p = out.pds;
    p.controls = slave.controls;
    p.stack_alphabet = slave.stack_alphabet;
    p.output_alphabet = r.all();
    p.initial = slave.initial;
    out.final_control = p.add_control("<f>");
    p.finals = {out.final_control};
    for (RuleId i = 0; i < slave.rules.size(); ++i) {
        const NaRule& s = slave.rules[i];
        std::optional<SymbolId> label;
        if (s.action.kind == ActionKind::read)
            label = r.reads[s.action.var][s.action.value];
        else if (s.action.kind == ActionKind::write)
            label = r.kills[s.action.var];
        p.add_rule({s.from, s.top, label, s.to, s.push});
        out.origin.push_back(i);
        if (s.action == Action::write(var, value)) {
            p.add_rule({s.from, s.top, std::nullopt, out.final_control, {s.top}});
            out.origin.push_back(i);
        }
    }
    return out;
}

Cfg write_language_cnf(const WritePds& wp) {
    return cfg_to_cnf(pds_to_cfg(pds_normalize(wp.pds)));
}

bool is_subword(std::span<const SymbolId> small, std::span<const SymbolId> big) {
    std::size_t i = 0;
    for (std::size_t j = 0; i < small.size() && j < big.size(); ++j)
        if (small[i] == big[j])
            ++i;
    return i == small.size();
}

namespace {

std::vector<Word> minimize(std::vector<Word> words) {
    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    words.erase(std::unique(words.begin(), words.end()), words.end());
    std::vector<Word> kept;
    for (Word& w : words)
        if (std::none_of(kept.begin(), kept.end(), [&](const Word& k) { return is_subword(k, w); }))
            kept.push_back(std::move(w));
    return kept;
}

}  // namespace

std::vector<Word> minimal_read_words(const Cfg& cnf, std::size_t max_antichain) {
    if (!cnf.is_cnf())
        throw ContractError("minimal_read_words needs a CNF grammar");
    if (cnf.start_nullable())
        return {Word{}};
    // Kleene iteration on M(A) = min({a | A -> a} u M(B).M(C)); the upward
    // closures grow monotonically and stabilise once every repetition-free
    // tree height has been covered.
    const std::size_t n = cnf.num_nonterminals();
    std::vector<std::vector<Word>> m(n);
    for (bool changed = true; changed;) {
        changed = false;
        for (NontermId a = 0; a < n; ++a) {
            std::vector<Word> cand;
            for (const Production& p : cnf.productions()) {
                if (p.head != a)
                    continue;
                if (p.body.size() == 1) {
                    cand.push_back({p.body[0].id});
                    continue;
                }
                const auto& left = m[p.body[0].id];
                const auto& right = m[p.body[1].id];
                if (left.size() * right.size() > max_antichain)
                    throw ResourceLimitError("minimal_read_words",
                                             "antichain cap " + std::to_string(max_antichain) + " exceeded");
                for (const Word& u : left)
                    for (const Word& v : right) {
                        Word w = u;
                        w.insert(w.end(), v.begin(), v.end());
                        cand.push_back(std::move(w));
                    }
            }
            auto next = minimize(std::move(cand));
            if (next.size() > max_antichain)
                throw ResourceLimitError("minimal_read_words",
                                         "antichain cap " + std::to_string(max_antichain) + " exceeded");
            if (next != m[a]) {
                m[a] = std::move(next);
                changed = true;
            }
        }
    }
    return m[cnf.start()];
}

Nfa subword_closure_nfa(std::span<const Word> words, std::vector<SymbolId> alphabet) {
    NfaBuilder b(alphabet);
    const StateId init = b.add_state();
    b.set_initial(init);
    auto loop = [&](StateId s) {
        for (SymbolId c : alphabet)
            b.add_transition(s, c, s);
    };
    loop(init);
    for (const Word& w : words) {
        if (w.empty()) {
            b.set_final(init);
            continue;
        }
        StateId cur = init;
        for (std::size_t i = 0; i < w.size(); ++i) {
            StateId next = b.add_state(i + 1 == w.size());
            loop(next);
            b.add_transition(cur, w[i], next);
            cur = next;
        }
    }
    return b.build();
}

ReadLanguage read_language_nfa(const ParamInstance& inst, const ReadAlphabet& r, VarId var,
                               ValueId value, std::size_t max_antichain) {
    WritePds wp = build_write_pds(inst, r, var, value);
    auto words = minimal_read_words(write_language_cnf(wp), max_antichain);
    return {var, value, subword_closure_nfa(words, r.all())};
}

bool closure_member(const Cfg& cnf, std::span<const SymbolId> word) {
    if (!cnf.is_cnf())
        throw ContractError("closure_member needs a CNF grammar");
    if (cnf.start_nullable())
        return true;
    const std::size_t n = word.size();
    if (n == 0)
        return false;
    const std::size_t nn = cnf.num_nonterminals();
    // d[a][i * (n + 1) + j]: a derives a scattered subword of word[i, j).
    std::vector<std::vector<char>> d(nn, std::vector<char>((n + 1) * (n + 1), 0));
    auto at = [&](NontermId a, std::size_t i, std::size_t j) -> char& { return d[a][i * (n + 1) + j]; };
    for (std::size_t len = 1; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            for (const Production& p : cnf.productions()) {
                if (at(p.head, i, j))
                    continue;
                if (p.body.size() == 1) {
                    if (std::find(word.begin() + i, word.begin() + j, p.body[0].id) != word.begin() + j)
                        at(p.head, i, j) = 1;
                    continue;
                }
                for (std::size_t m = i + 1; m < j; ++m)
                    if (at(p.body[0].id, i, m) && at(p.body[1].id, m, j)) {
                        at(p.head, i, j) = 1;
                        break;
                    }
            }
        }
    return at(cnf.start(), 0, n);
}

Cfg closure_grammar(const Cfg& cnf, const std::vector<SymbolId>& alphabet) {
    if (!cnf.is_cnf())
        throw ContractError("closure_grammar needs a CNF grammar");
    // Stays in CNF: U -> c for every letter, A -> U A for every A with a
    // terminal production (letters before a leaf), S -> S U (letters after
    // the last leaf). With eps in L the closure is all words.
    Cfg g;
    for (SymbolId t : alphabet)
        g.add_terminal(t);
    if (cnf.start_nullable()) {
        const NontermId s = g.add_nonterminal("S");
        const NontermId u = g.add_nonterminal("U");
        g.set_start(s);
        g.add_production(s, {GSymbol::nonterm(s), GSymbol::nonterm(u)});
        for (SymbolId c : alphabet) {
            g.add_production(s, {GSymbol::term(c)});
            g.add_production(u, {GSymbol::term(c)});
        }
        g.mark_cnf(true);
        return g;
    }
    for (SymbolId t : cnf.terminals())
        g.add_terminal(t);
    for (NontermId a = 0; a < cnf.num_nonterminals(); ++a)
        g.add_nonterminal(cnf.nonterminal_name(a));
    g.set_start(cnf.start());
    const NontermId u = g.add_nonterminal("U'");
    for (SymbolId c : alphabet)
        g.add_production(u, {GSymbol::term(c)});
    std::vector<bool> padded(cnf.num_nonterminals(), false);
    for (const Production& p : cnf.productions()) {
        g.add_production(p.head, p.body);
        if (p.body.size() == 1 && !padded[p.head]) {
            padded[p.head] = true;
            g.add_production(p.head, {GSymbol::nonterm(u), GSymbol::nonterm(p.head)});
        }
    }
    g.add_production(cnf.start(), {GSymbol::nonterm(cnf.start()), GSymbol::nonterm(u)});
    g.mark_cnf(false);
    return g;
}

}  // namespace napds
