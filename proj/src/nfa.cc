#include "napds/nfa.hh"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "napds/detail/hash.hh"
#include "napds/errors.hh"

namespace napds {

namespace {

std::vector<SymbolId> normalized_alphabet(std::vector<SymbolId> alphabet) {
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    return alphabet;
}

using StateSet = std::vector<StateId>;

StateSet post_set(const Nfa& nfa, const StateSet& from, SymbolId sym) {
    StateSet out;
    for (StateId s : from)
        for (const auto& t : nfa.transitions(s))
            if (t.symbol == sym)
                out.push_back(t.target);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool any_final(const Nfa& nfa, const StateSet& set) {
    return std::any_of(set.begin(), set.end(), [&](StateId s) { return nfa.is_final(s); });
}

}  // namespace

Nfa::Nfa(std::vector<SymbolId> alphabet, StateId initial, std::vector<bool> finals,
         std::vector<std::vector<Transition>> delta)
    : alphabet_(normalized_alphabet(std::move(alphabet))), initial_(initial),
      finals_(std::move(finals)), delta_(std::move(delta)) {
    if (finals_.empty())
        throw ContractError("an automaton needs at least one state");
    if (delta_.size() != finals_.size())
        throw ContractError("transition table size does not match the state count");
    if (initial_ >= finals_.size())
        throw ContractError("initial state is not declared");
    for (auto& out : delta_) {
        for (const auto& t : out) {
            if (t.target >= finals_.size())
                throw ContractError("transition target is not a declared state");
            if (!in_alphabet(t.symbol))
                throw ContractError("transition label is not in the alphabet");
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
}

bool Nfa::in_alphabet(SymbolId sym) const {
    return std::binary_search(alphabet_.begin(), alphabet_.end(), sym);
}

std::size_t Nfa::num_transitions() const {
    std::size_t n = 0;
    for (const auto& out : delta_)
        n += out.size();
    return n;
}

std::vector<StateId> Nfa::post(StateId s, SymbolId sym) const {
    const auto& out = delta_.at(s);
    auto lo = std::lower_bound(out.begin(), out.end(), Transition{sym, 0});
    std::vector<StateId> result;
    for (; lo != out.end() && lo->symbol == sym; ++lo)
        result.push_back(lo->target);
    return result;
}

StateId NfaBuilder::add_state(bool final) {
    finals_.push_back(final);
    delta_.emplace_back();
    eps_.emplace_back();
    return static_cast<StateId>(finals_.size() - 1);
}

void NfaBuilder::set_final(StateId s, bool final) { finals_.at(s) = final; }

void NfaBuilder::add_transition(StateId from, SymbolId sym, StateId to) {
    delta_.at(from).push_back({sym, to});
}

void NfaBuilder::add_epsilon(StateId from, StateId to) { eps_.at(from).push_back(to); }

Nfa NfaBuilder::build() const {
    if (finals_.empty())
        throw ContractError("NfaBuilder::build on a builder without states");
    const std::size_t n = finals_.size();
    std::vector<std::vector<Transition>> delta(n);
    std::vector<bool> finals(n, false);
    std::vector<char> seen(n);
    for (StateId s = 0; s < n; ++s) {
        // epsilon closure of s
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<StateId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            StateId u = stack.back();
            stack.pop_back();
            if (finals_[u])
                finals[s] = true;
            for (const auto& t : delta_[u])
                delta[s].push_back(t);
            for (StateId v : eps_[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
    }
    return Nfa(alphabet_, initial_, std::move(finals), std::move(delta));
}

bool nfa_accepts(const Nfa& nfa, std::span<const SymbolId> word) {
    StateSet current{nfa.initial()};
    for (SymbolId sym : word) {
        if (!nfa.in_alphabet(sym))
            throw InputError("symbol " + std::to_string(sym) + " is not in the automaton's alphabet");
        current = post_set(nfa, current, sym);
        if (current.empty())
            return false;
    }
    return any_final(nfa, current);
}

bool nfa_is_empty(const Nfa& nfa) {
    std::vector<char> seen(nfa.num_states());
    std::vector<StateId> stack{nfa.initial()};
    seen[nfa.initial()] = 1;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        if (nfa.is_final(s))
            return false;
        for (const auto& t : nfa.transitions(s))
            if (!seen[t.target]) {
                seen[t.target] = 1;
                stack.push_back(t.target);
            }
    }
    return true;
}

Nfa determinize(const Nfa& nfa, std::size_t max_states) {
    std::unordered_map<StateSet, StateId, detail::VectorHash> index;
    std::vector<StateSet> subsets;
    auto intern = [&](StateSet set) -> StateId {
        auto [it, inserted] = index.try_emplace(set, static_cast<StateId>(subsets.size()));
        if (inserted) {
            if (subsets.size() >= max_states)
                throw ResourceLimitError("determinization exceeded " + std::to_string(max_states) +
                                         " subset states");
            subsets.push_back(std::move(set));
        }
        return it->second;
    };
    intern(StateSet{nfa.initial()});
    std::vector<std::vector<Transition>> delta;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::vector<Transition> out;
        for (SymbolId sym : nfa.alphabet()) {
            StateSet next = post_set(nfa, subsets[i], sym);
            out.push_back({sym, intern(std::move(next))});
        }
        delta.push_back(std::move(out));
    }
    std::vector<bool> finals(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        finals[i] = any_final(nfa, subsets[i]);
    return Nfa(nfa.alphabet(), 0, std::move(finals), std::move(delta));
}

std::optional<Word> nfa_difference_witness(const Nfa& a, const Nfa& b, std::size_t max_states) {
    if (a.alphabet() != b.alphabet())
        throw ContractError("equivalence check needs automata over the same alphabet");
    Nfa da = determinize(a, max_states);
    Nfa db = determinize(b, max_states);
    // Both are complete DFAs; breadth-first search over the product finds a
    // shortest word in the symmetric difference.
    using Pair = std::pair<StateId, StateId>;
    std::unordered_map<Pair, std::pair<Pair, SymbolId>, detail::PairHash> parent;
    std::deque<Pair> queue;
    Pair start{da.initial(), db.initial()};
    parent.emplace(start, std::pair{start, SymbolId{0}});
    queue.push_back(start);
    while (!queue.empty()) {
        Pair p = queue.front();
        queue.pop_front();
        if (da.is_final(p.first) != db.is_final(p.second)) {
            Word w;
            for (Pair cur = p; cur != start; cur = parent.at(cur).first)
                w.push_back(parent.at(cur).second);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (SymbolId sym : da.alphabet()) {
            Pair next{da.post(p.first, sym).front(), db.post(p.second, sym).front()};
            if (parent.emplace(next, std::pair{p, sym}).second)
                queue.push_back(next);
        }
    }
    return std::nullopt;
}

bool nfa_equivalent(const Nfa& a, const Nfa& b, std::size_t max_states) {
    return !nfa_difference_witness(a, b, max_states).has_value();
}

Nfa trim(const Nfa& nfa) {
    const std::size_t n = nfa.num_states();
    std::vector<char> fwd(n), bwd(n);
    std::vector<std::vector<StateId>> rev(n);
    for (StateId s = 0; s < n; ++s)
        for (const auto& t : nfa.transitions(s))
            rev[t.target].push_back(s);
    std::vector<StateId> stack{nfa.initial()};
    fwd[nfa.initial()] = 1;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (const auto& t : nfa.transitions(s))
            if (!fwd[t.target]) {
                fwd[t.target] = 1;
                stack.push_back(t.target);
            }
    }
    for (StateId s = 0; s < n; ++s)
        if (nfa.is_final(s)) {
            bwd[s] = 1;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId p : rev[s])
            if (!bwd[p]) {
                bwd[p] = 1;
                stack.push_back(p);
            }
    }
    std::vector<StateId> remap(n, static_cast<StateId>(-1));
    std::vector<bool> finals;
    StateId next = 0;
    for (StateId s = 0; s < n; ++s)
        if (s == nfa.initial() || (fwd[s] && bwd[s])) {
            remap[s] = next++;
            finals.push_back(nfa.is_final(s));
        }
    std::vector<std::vector<Transition>> delta(next);
    for (StateId s = 0; s < n; ++s) {
        if (remap[s] == static_cast<StateId>(-1))
            continue;
        for (const auto& t : nfa.transitions(s))
            if (remap[t.target] != static_cast<StateId>(-1) && fwd[s] && bwd[t.target])
                delta[remap[s]].push_back({t.symbol, remap[t.target]});
    }
    return Nfa(nfa.alphabet(), remap[nfa.initial()], std::move(finals), std::move(delta));
}

std::string to_dot(const Nfa& nfa, const SymbolTable& symbols, std::string_view name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (StateId s = 0; s < nfa.num_states(); ++s)
        os << "  q" << s << " [shape=" << (nfa.is_final(s) ? "doublecircle" : "circle") << "];\n";
    os << "  __start -> q" << nfa.initial() << ";\n";
    for (StateId s = 0; s < nfa.num_states(); ++s) {
        // group parallel edges into one label
        std::vector<std::pair<StateId, std::string>> edges;
        for (const auto& t : nfa.transitions(s)) {
            auto it = std::find_if(edges.begin(), edges.end(),
                                   [&](const auto& e) { return e.first == t.target; });
            if (it == edges.end())
                edges.emplace_back(t.target, symbols.name(t.symbol));
            else
                it->second += ", " + symbols.name(t.symbol);
        }
        for (const auto& [target, label] : edges)
            os << "  q" << s << " -> q" << target << " [label=\"" << label << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace napds
