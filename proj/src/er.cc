#include "napds/er.hh"

#include <algorithm>
#include <deque>

#include "napds/errors.hh"

namespace napds {

std::vector<MarkedSymbol> marked_alphabet(const Cfg& cnf) {
    if (!cnf.is_cnf())
        throw ContractError("marked_alphabet needs a CNF grammar");
    std::vector<MarkedSymbol> out;
    for (const Production& p : cnf.productions())
        if (p.body.size() == 2)
            for (std::uint8_t k : {1, 2})
                out.push_back(MarkedSymbol::binary(p.head, p.body[0].id, p.body[1].id, k));
    for (const Production& p : cnf.productions())
        if (p.body.size() == 1)
            out.push_back(MarkedSymbol::term(p.head, p.body[0].id));
    for (SymbolId t : cnf.terminals())
        out.push_back(MarkedSymbol::leaf(t));
    return out;
}

std::string marked_name(const MarkedSymbol& m, const Cfg& g, const SymbolTable& symbols) {
    switch (m.kind) {
    case MarkedSymbol::Kind::binary:
        return "(" + g.nonterminal_name(m.head) + "," + g.nonterminal_name(m.left) + "," +
               g.nonterminal_name(m.right) + "," + std::to_string(m.dir) + ")";
    case MarkedSymbol::Kind::terminal:
        return "(" + g.nonterminal_name(m.head) + "," + symbols.name(m.terminal) + ")";
    case MarkedSymbol::Kind::leaf:
        break;
    }
    return symbols.name(m.terminal);
}

namespace {

void check_cap(std::size_t m, std::size_t cap) {
    if (m > cap)
        throw ResourceLimitError("er", "marked alphabet has " + std::to_string(m) +
                                           " symbols, cap is " + std::to_string(cap) +
                                           " (raise with --max-types)");
}

}  // namespace

std::vector<SpineType> enumerate_types(std::size_t m, std::size_t cap) {
    check_cap(m, cap);
    std::vector<SpineType> out;
    SpineType cur;
    std::vector<bool> used(m, false);
    auto extend = [&](auto& self, std::size_t len) -> void {
        if (cur.size() == len) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t i = 0; i < m; ++i) {
            if (used[i])
                continue;
            used[i] = true;
            cur.push_back(i);
            self(self, len);
            cur.pop_back();
            used[i] = false;
        }
    };
    for (std::size_t len = 1; len <= m; ++len)
        extend(extend, len);
    return out;
}

Nfa type_nfa(const SpineType& x, std::size_t m) {
    std::vector<SymbolId> alphabet(m);
    for (std::size_t i = 0; i < m; ++i)
        alphabet[i] = static_cast<SymbolId>(i);
    // State 2i is "block i done" (0 is the start); 2i+1 is inside block i+1.
    const std::size_t s = x.size();
    std::vector<bool> finals(2 * s + 1, false);
    finals[2 * s] = true;
    std::vector<std::vector<Transition>> delta(2 * s + 1);
    for (std::size_t i = 0; i < s; ++i) {
        const auto done = static_cast<StateId>(2 * i);
        const auto inside = static_cast<StateId>(2 * i + 1);
        const auto next = static_cast<StateId>(2 * i + 2);
        delta[done].push_back({x[i], next});
        delta[done].push_back({x[i], inside});
        for (SymbolId a : alphabet)
            delta[inside].push_back({a, inside});
        delta[inside].push_back({x[i], next});
    }
    return Nfa(std::move(alphabet), 0, std::move(finals), std::move(delta));
}

Cfg typed_grammar(const Cfg& cnf, std::span<const MarkedSymbol> alphabet, const SpineType& x) {
    const Nfa a = type_nfa(x, alphabet.size());
    const std::size_t n = cnf.num_nonterminals();
    const std::size_t q = a.num_states();
    Cfg g;
    for (SymbolId t : cnf.terminals())
        g.add_terminal(t);
    for (NontermId v = 0; v < n; ++v)
        g.add_nonterminal(cnf.nonterminal_name(v));
    for (std::size_t s = 0; s < q; ++s)
        for (NontermId v = 0; v < n; ++v)
            g.add_nonterminal(cnf.nonterminal_name(v) + "_" + std::to_string(s));
    for (NontermId v = 0; v < n; ++v)
        g.add_nonterminal(cnf.nonterminal_name(v) + "_eps");
    auto plain = [](NontermId v) { return GSymbol::nonterm(v); };
    auto at = [&](StateId s, NontermId v) { return GSymbol::nonterm(static_cast<NontermId>(n + s * n + v)); };
    auto eps = [&](NontermId v) { return GSymbol::nonterm(static_cast<NontermId>(n + q * n + v)); };

    for (const Production& p : cnf.productions()) {
        g.add_production(p.head, p.body);
        if (p.body.size() == 2) {
            g.add_production(eps(p.head).id, {eps(p.body[0].id), eps(p.body[1].id)});
        } else {
            g.add_production(eps(p.head).id, {});
        }
    }
    for (std::uint32_t i = 0; i < alphabet.size(); ++i) {
        const MarkedSymbol& m = alphabet[i];
        if (m.kind == MarkedSymbol::Kind::leaf)
            continue;
        for (StateId s = 0; s < q; ++s)
            for (StateId t : a.post(s, i)) {
                if (m.kind == MarkedSymbol::Kind::terminal) {
                    if (a.is_final(t))
                        g.add_production(at(s, m.head).id, {GSymbol::term(m.terminal)});
                } else if (m.dir == 1) {
                    g.add_production(at(s, m.head).id, {at(t, m.left), eps(m.right)});
                } else {
                    g.add_production(at(s, m.head).id, {plain(m.left), at(t, m.right)});
                }
            }
    }
    g.set_start(at(a.initial(), cnf.start()).id);
    return g;
}

SpineTypeIndex::SpineTypeIndex(const Cfg& cnf, const ErOptions& options)
    : alphabet_(marked_alphabet(cnf)) {
    check_cap(alphabet_.size(), options.max_marked);
    const std::size_t m = alphabet_.size();
    auto entered = [&](const MarkedSymbol& s) { return s.dir == 1 ? s.left : s.right; };
    std::vector<SpineType> candidates;
    SpineType cur;
    std::vector<bool> used(m, false);
    auto extend = [&](auto& self) -> void {
        const MarkedSymbol& last = alphabet_[cur.back()];
        if (last.kind == MarkedSymbol::Kind::terminal) {
            candidates.push_back(cur);
            return;
        }
        for (std::uint32_t j = 0; j < m; ++j) {
            const MarkedSymbol& s = alphabet_[j];
            if (used[j] || s.kind == MarkedSymbol::Kind::leaf || s.head != entered(last))
                continue;
            used[j] = true;
            cur.push_back(j);
            self(self);
            cur.pop_back();
            used[j] = false;
        }
    };
    for (std::uint32_t i = 0; i < m; ++i) {
        if (alphabet_[i].kind == MarkedSymbol::Kind::leaf || alphabet_[i].head != cnf.start())
            continue;
        used[i] = true;
        cur = {i};
        extend(extend);
        used[i] = false;
    }
    std::sort(candidates.begin(), candidates.end(), [](const SpineType& a, const SpineType& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (SpineType& x : candidates) {
        Cfg gx = cfg_to_cnf(typed_grammar(cnf, alphabet_, x));
        if (cfg_is_empty(gx))
            continue;
        types_.push_back(std::move(x));
        typed_cnf_.push_back(std::move(gx));
    }
}

std::vector<bool> SpineTypeIndex::types_of(std::span<const SymbolId> w) const {
    std::vector<bool> out(types_.size(), false);
    if (w.empty())
        return out;
    for (std::size_t i = 0; i < types_.size(); ++i)
        out[i] = cfg_member(typed_cnf_[i], w);
    return out;
}

bool spine_types_equal(const Cfg& cnf, std::span<const SymbolId> w, std::span<const SymbolId> w2,
                       const ErOptions& options) {
    SpineTypeIndex index(cnf, options);
    return index.types_of(w) == index.types_of(w2);
}

Nfa er_nfa(const Cfg& cnf, const ErOptions& options) {
    SpineTypeIndex index(cnf, options);
    const std::vector<SymbolId>& sigma = cnf.terminals();
    std::vector<Word> reps{Word{}};
    std::vector<bool> finals{cnf.start_nullable()};
    std::vector<std::vector<Transition>> delta(1);
    std::map<std::vector<bool>, StateId> by_type;
    std::deque<StateId> work{0};
    while (!work.empty()) {
        const StateId s = work.front();
        work.pop_front();
        for (SymbolId a : sigma) {
            Word w = reps[s];
            w.push_back(a);
            const bool member = cfg_member(cnf, w);
            auto key = index.types_of(w);
            StateId t;
            if (auto it = by_type.find(key); it != by_type.end()) {
                t = it->second;
                if (finals[t] != member)
                    throw PreconditionViolation(
                        "er_nfa: words with equal spine types disagree on membership; the "
                        "grammar's language is not very degenerate");
            } else {
                if (reps.size() >= options.max_states)
                    throw ResourceLimitError("er", "state cap " + std::to_string(options.max_states) +
                                                       " exceeded (raise with --max-states)");
                t = static_cast<StateId>(reps.size());
                reps.push_back(std::move(w));
                finals.push_back(member);
                delta.emplace_back();
                by_type.emplace(std::move(key), t);
                work.push_back(t);
            }
            delta[s].push_back({a, t});
        }
    }
    return Nfa(sigma, 0, std::move(finals), std::move(delta));
}

}  // namespace napds
