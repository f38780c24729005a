#include "napds/cfg.hh"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "napds/errors.hh"

namespace napds {

NontermId Cfg::add_nonterminal(std::string name) {
    names_.push_back(std::move(name));
    cnf_ = false;
    return static_cast<NontermId>(names_.size() - 1);
}

void Cfg::add_terminal(SymbolId sym) {
    auto it = std::lower_bound(terminals_.begin(), terminals_.end(), sym);
    if (it == terminals_.end() || *it != sym)
        terminals_.insert(it, sym);
}

bool Cfg::has_terminal(SymbolId sym) const {
    return std::binary_search(terminals_.begin(), terminals_.end(), sym);
}

void Cfg::add_production(NontermId head, std::vector<GSymbol> body) {
    if (head >= names_.size())
        throw ContractError("production head is not a declared nonterminal");
    for (const auto& s : body) {
        if (s.terminal && !has_terminal(s.id))
            throw ContractError("production uses an undeclared terminal");
        if (!s.terminal && s.id >= names_.size())
            throw ContractError("production uses an undeclared nonterminal");
    }
    productions_.push_back({head, std::move(body)});
    cnf_ = false;
}

void Cfg::set_start(NontermId start) {
    if (start >= names_.size())
        throw ContractError("start symbol is not a declared nonterminal");
    start_ = start;
}

void Cfg::mark_cnf(bool start_nullable) {
    for (const auto& p : productions_) {
        bool binary = p.body.size() == 2 && !p.body[0].terminal && !p.body[1].terminal;
        bool unit_terminal = p.body.size() == 1 && p.body[0].terminal;
        if (!binary && !unit_terminal)
            throw ContractError("grammar is not in Chomsky normal form");
    }
    start_nullable_ = start_nullable;
    cnf_ = true;
}

void Cfg::validate() const {
    if (!names_.empty() && start_ >= names_.size())
        throw ContractError("start symbol is not declared");
    for (const auto& p : productions_) {
        if (p.head >= names_.size())
            throw ContractError("undeclared production head");
        for (const auto& s : p.body)
            if (s.terminal ? !has_terminal(s.id) : s.id >= names_.size())
                throw ContractError("undeclared symbol in a production body");
    }
}

std::vector<bool> productive_nonterminals(const Cfg& g) {
    std::vector<bool> productive(g.num_nonterminals(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            if (productive[p.head])
                continue;
            bool ok = std::all_of(p.body.begin(), p.body.end(),
                                  [&](const GSymbol& s) { return s.terminal || productive[s.id]; });
            if (ok) {
                productive[p.head] = true;
                changed = true;
            }
        }
    }
    return productive;
}

bool cfg_is_empty(const Cfg& g) {
    if (g.num_nonterminals() == 0)
        return true;
    if (g.is_cnf() && g.start_nullable())
        return false;
    return !productive_nonterminals(g)[g.start()];
}

namespace {

std::vector<bool> nullable_nonterminals(const Cfg& g) {
    std::vector<bool> nullable(g.num_nonterminals(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            if (nullable[p.head])
                continue;
            bool ok = std::all_of(p.body.begin(), p.body.end(),
                                  [&](const GSymbol& s) { return !s.terminal && nullable[s.id]; });
            if (ok) {
                nullable[p.head] = true;
                changed = true;
            }
        }
    }
    return nullable;
}

using ProductionSet = std::set<Production>;

ProductionSet remove_epsilon(const Cfg& g, const std::vector<bool>& nullable) {
    ProductionSet out;
    for (const auto& p : g.productions()) {
        std::vector<std::size_t> optional_positions;
        for (std::size_t i = 0; i < p.body.size(); ++i)
            if (!p.body[i].terminal && nullable[p.body[i].id])
                optional_positions.push_back(i);
        if (optional_positions.size() > 20)
            throw ResourceLimitError("cnf", "production body has more than 20 nullable occurrences");
        const std::size_t variants = std::size_t{1} << optional_positions.size();
        for (std::size_t mask = 0; mask < variants; ++mask) {
            std::vector<GSymbol> body;
            std::size_t k = 0;
            for (std::size_t i = 0; i < p.body.size(); ++i) {
                if (k < optional_positions.size() && optional_positions[k] == i) {
                    if (!(mask >> k & 1))
                        body.push_back(p.body[i]);
                    ++k;
                } else {
                    body.push_back(p.body[i]);
                }
            }
            if (!body.empty())
                out.insert({p.head, std::move(body)});
        }
    }
    return out;
}

ProductionSet remove_units(std::size_t num_nonterminals, const ProductionSet& in) {
    auto is_unit = [](const Production& p) { return p.body.size() == 1 && !p.body[0].terminal; };
    std::vector<std::vector<NontermId>> unit_succ(num_nonterminals);
    for (const auto& p : in)
        if (is_unit(p))
            unit_succ[p.head].push_back(p.body[0].id);
    std::vector<std::vector<const Production*>> by_head(num_nonterminals);
    for (const auto& p : in)
        if (!is_unit(p))
            by_head[p.head].push_back(&p);
    ProductionSet out;
    std::vector<char> seen(num_nonterminals);
    for (NontermId a = 0; a < num_nonterminals; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<NontermId> stack{a};
        seen[a] = 1;
        while (!stack.empty()) {
            NontermId b = stack.back();
            stack.pop_back();
            for (const Production* p : by_head[b])
                out.insert({a, p->body});
            for (NontermId c : unit_succ[b])
                if (!seen[c]) {
                    seen[c] = 1;
                    stack.push_back(c);
                }
        }
    }
    return out;
}

ProductionSet remove_useless(std::size_t num_nonterminals, NontermId start, const ProductionSet& in) {
    std::vector<bool> productive(num_nonterminals, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : in) {
            if (productive[p.head])
                continue;
            if (std::all_of(p.body.begin(), p.body.end(),
                            [&](const GSymbol& s) { return s.terminal || productive[s.id]; })) {
                productive[p.head] = true;
                changed = true;
            }
        }
    }
    std::vector<const Production*> kept;
    for (const auto& p : in)
        if (productive[p.head] &&
            std::all_of(p.body.begin(), p.body.end(),
                        [&](const GSymbol& s) { return s.terminal || productive[s.id]; }))
            kept.push_back(&p);
    std::vector<bool> reachable(num_nonterminals, false);
    reachable[start] = true;
    changed = true;
    while (changed) {
        changed = false;
        for (const Production* p : kept) {
            if (!reachable[p->head])
                continue;
            for (const auto& s : p->body)
                if (!s.terminal && !reachable[s.id]) {
                    reachable[s.id] = true;
                    changed = true;
                }
        }
    }
    ProductionSet out;
    for (const Production* p : kept)
        if (reachable[p->head])
            out.insert(*p);
    return out;
}

}  // namespace

Cfg cfg_to_cnf(const Cfg& g) {
    g.validate();
    Cfg out;
    for (SymbolId t : g.terminals())
        out.add_terminal(t);
    if (g.num_nonterminals() == 0) {
        out.add_nonterminal("S");
        out.set_start(0);
        out.mark_cnf(false);
        return out;
    }
    std::vector<bool> nullable = nullable_nonterminals(g);
    bool start_nullable = nullable[g.start()] || (g.is_cnf() && g.start_nullable());
    ProductionSet prods = remove_epsilon(g, nullable);
    prods = remove_units(g.num_nonterminals(), prods);
    prods = remove_useless(g.num_nonterminals(), g.start(), prods);

    // Renumber: start first, then heads and body references in order.
    std::vector<NontermId> remap(g.num_nonterminals(), static_cast<NontermId>(-1));
    auto map_nt = [&](NontermId n) {
        if (remap[n] == static_cast<NontermId>(-1))
            remap[n] = out.add_nonterminal(g.nonterminal_name(n));
        return remap[n];
    };
    out.set_start(map_nt(g.start()));
    std::map<SymbolId, NontermId> terminal_nt;
    auto terminal_nonterminal = [&](SymbolId t) {
        auto it = terminal_nt.find(t);
        if (it != terminal_nt.end())
            return it->second;
        NontermId n = out.add_nonterminal("T'" + std::to_string(t));
        out.add_production(n, {GSymbol::term(t)});
        terminal_nt.emplace(t, n);
        return n;
    };
    std::size_t fresh = 0;
    for (const auto& p : prods) {
        NontermId head = map_nt(p.head);
        if (p.body.size() == 1) {
            out.add_production(head, {p.body[0]});  // terminal, units are gone
            continue;
        }
        std::vector<NontermId> parts;
        for (const auto& s : p.body)
            parts.push_back(s.terminal ? terminal_nonterminal(s.id) : map_nt(s.id));
        NontermId current = head;
        for (std::size_t i = 0; i + 2 < parts.size(); ++i) {
            NontermId rest = out.add_nonterminal(out.nonterminal_name(head) + "'" + std::to_string(fresh++));
            out.add_production(current, {GSymbol::nonterm(parts[i]), GSymbol::nonterm(rest)});
            current = rest;
        }
        out.add_production(current, {GSymbol::nonterm(parts[parts.size() - 2]),
                                     GSymbol::nonterm(parts.back())});
    }
    out.mark_cnf(start_nullable);
    return out;
}

bool cfg_member(const Cfg& cnf, std::span<const SymbolId> word) {
    if (!cnf.is_cnf())
        throw ContractError("cfg_member requires a grammar in Chomsky normal form");
    const std::size_t n = word.size();
    if (n == 0)
        return cnf.start_nullable();
    const std::size_t nt = cnf.num_nonterminals();
    const std::size_t words_per_cell = (nt + 63) / 64;
    // cell (i, len) covers word[i, i+len)
    std::vector<std::uint64_t> table(n * (n + 1) * words_per_cell, 0);
    auto cell = [&](std::size_t i, std::size_t len) { return &table[(i * (n + 1) + len) * words_per_cell]; };
    auto test = [&](const std::uint64_t* c, NontermId a) { return (c[a / 64] >> (a % 64)) & 1; };
    auto set = [&](std::uint64_t* c, NontermId a) { c[a / 64] |= std::uint64_t{1} << (a % 64); };

    std::vector<const Production*> binary;
    for (const auto& p : cnf.productions()) {
        if (p.body.size() == 2)
            binary.push_back(&p);
        else
            for (std::size_t i = 0; i < n; ++i)
                if (word[i] == p.body[0].id)
                    set(cell(i, 1), p.head);
    }
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::uint64_t* target = cell(i, len);
            for (const Production* p : binary) {
                if (test(target, p->head))
                    continue;
                for (std::size_t split = 1; split < len; ++split)
                    if (test(cell(i, split), p->body[0].id) &&
                        test(cell(i + split, len - split), p->body[1].id)) {
                        set(target, p->head);
                        break;
                    }
            }
        }
    return test(cell(0, n), cnf.start());
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

}  // namespace

Cfg parse_grammar(std::string_view text, SymbolTable& symbols) {
    struct Line {
        std::size_t number;
        std::vector<std::string> tokens;
    };
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        auto tokens = split_ws(raw);
        if (tokens.empty())
            continue;
        if (tokens.size() < 3 || tokens[1] != "->")
            throw InputError("line " + std::to_string(number) + ": expected `A -> body`");
        lines.push_back({number, std::move(tokens)});
    }
    if (lines.empty())
        throw InputError("grammar has no productions");

    Cfg g;
    std::map<std::string, NontermId> heads;
    for (const auto& line : lines)
        if (!heads.count(line.tokens[0]))
            heads.emplace(line.tokens[0], g.add_nonterminal(line.tokens[0]));
    g.set_start(heads.at(lines.front().tokens[0]));
    for (const auto& line : lines)
        for (std::size_t i = 2; i < line.tokens.size(); ++i) {
            const auto& tok = line.tokens[i];
            if (tok == "eps")
                continue;
            if (!heads.count(tok))
                g.add_terminal(symbols.intern(tok));
        }
    for (const auto& line : lines) {
        std::vector<GSymbol> body;
        bool has_eps = false;
        for (std::size_t i = 2; i < line.tokens.size(); ++i) {
            const auto& tok = line.tokens[i];
            if (tok == "eps") {
                has_eps = true;
                continue;
            }
            auto it = heads.find(tok);
            body.push_back(it != heads.end() ? GSymbol::nonterm(it->second)
                                             : GSymbol::term(*symbols.lookup(tok)));
        }
        if (has_eps && !body.empty())
            throw InputError("line " + std::to_string(line.number) + ": `eps` must be the whole body");
        g.add_production(heads.at(line.tokens[0]), std::move(body));
    }
    return g;
}

std::string print_grammar(const Cfg& g, const SymbolTable& symbols) {
    std::ostringstream os;
    auto print = [&](const Production& p) {
        os << g.nonterminal_name(p.head) << " ->";
        if (p.body.empty())
            os << " eps";
        for (const auto& s : p.body)
            os << ' ' << (s.terminal ? symbols.name(s.id) : g.nonterminal_name(s.id));
        os << '\n';
    };
    if (g.num_nonterminals() == 0)
        return {};
    if (g.is_cnf() && g.start_nullable())
        os << g.nonterminal_name(g.start()) << " -> eps\n";
    else if (std::none_of(g.productions().begin(), g.productions().end(),
                          [&](const Production& p) { return p.head == g.start(); }))
        os << g.nonterminal_name(g.start()) << " -> " << g.nonterminal_name(g.start())
           << "  # empty language\n";
    for (const auto& p : g.productions())
        if (p.head == g.start())
            print(p);
    for (const auto& p : g.productions())
        if (p.head != g.start())
            print(p);
    return os.str();
}

}  // namespace napds
