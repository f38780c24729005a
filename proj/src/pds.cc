#include "napds/pds.hh"

#include <algorithm>
#include <map>
#include <tuple>

#include "napds/errors.hh"
#include "napds/saturation.hh"

namespace napds {

bool respects_bottom_discipline(SymbolId top, const Word& push) {
    auto bottoms = std::count(push.begin(), push.end(), kBottom);
    if (top == kBottom)
        return bottoms == 1 && push.back() == kBottom;
    return bottoms == 0;
}

ControlId Pds::add_control(std::string name) {
    controls.push_back(std::move(name));
    return static_cast<ControlId>(controls.size() - 1);
}

RuleId Pds::add_rule(PdsRule rule) {
    rules.push_back(std::move(rule));
    return static_cast<RuleId>(rules.size() - 1);
}

bool Pds::is_final(ControlId c) const {
    return std::find(finals.begin(), finals.end(), c) != finals.end();
}

void Pds::validate() const {
    auto in_stack = [&](SymbolId s) {
        return std::find(stack_alphabet.begin(), stack_alphabet.end(), s) != stack_alphabet.end();
    };
    if (initial >= controls.size())
        throw ContractError("PDS initial control is not declared");
    for (ControlId f : finals)
        if (f >= controls.size())
            throw ContractError("PDS final control is not declared");
    for (const auto& r : rules) {
        if (r.from >= controls.size() || r.to >= controls.size())
            throw ContractError("PDS rule uses an undeclared control");
        if (!in_stack(r.top) || !std::all_of(r.push.begin(), r.push.end(), in_stack))
            throw ContractError("PDS rule uses an undeclared stack symbol");
        if (r.label && std::find(output_alphabet.begin(), output_alphabet.end(), *r.label) ==
                           output_alphabet.end())
            throw ContractError("PDS rule label is not in the output alphabet");
        if (!respects_bottom_discipline(r.top, r.push))
            throw ContractError("PDS rule violates the bottom-of-stack discipline");
    }
}

std::optional<PdsConfig> pds_apply(const Pds& pds, const PdsConfig& config, RuleId rule) {
    const PdsRule& r = pds.rules.at(rule);
    if (config.stack.empty() || config.control != r.from || config.stack.front() != r.top)
        return std::nullopt;
    PdsConfig next{r.to, r.push};
    next.stack.insert(next.stack.end(), config.stack.begin() + 1, config.stack.end());
    return next;
}

namespace {

class ExplicitSystem {
public:
    explicit ExplicitSystem(const Pds& pds) : pds_(pds) {
        for (RuleId i = 0; i < pds.rules.size(); ++i)
            index_[{pds.rules[i].from, pds.rules[i].top}].push_back(i);
    }

    ControlId initial_control() const { return pds_.initial; }

    std::vector<SaturationRule> rules_from(ControlId c, SymbolId top) const {
        std::vector<SaturationRule> out;
        if (auto it = index_.find({c, top}); it != index_.end())
            for (RuleId id : it->second)
                out.push_back({id, pds_.rules[id].to, pds_.rules[id].push});
        return out;
    }

private:
    const Pds& pds_;
    std::map<std::pair<ControlId, SymbolId>, std::vector<RuleId>> index_;
};

}  // namespace

ReachResult pds_control_reachable(const Pds& pds, std::span<const ControlId> targets) {
    std::vector<bool> is_target(pds.controls.size(), false);
    for (ControlId t : targets)
        is_target.at(t) = true;
    ExplicitSystem system(pds);
    Saturation<ExplicitSystem> sat(system, [&](ControlId c) { return is_target[c]; });
    ReachResult result;
    result.reachable = sat.run();
    if (result.reachable)
        result.trace = sat.trace();
    return result;
}

Pds pds_normalize(const Pds& pds) {
    Pds out = pds;
    out.rules.clear();
    for (RuleId id = 0; id < pds.rules.size(); ++id) {
        const PdsRule& r = pds.rules[id];
        const std::size_t k = r.push.size();
        if (k <= 2) {
            out.rules.push_back(r);
            continue;
        }
        // <q,a> -> <m1, w[k-2] w[k-1]>, <m_j, w[k-1-j]> -> <m_{j+1}, w[k-2-j] w[k-1-j]>,
        // ending in <m_{k-2}, w[1]> -> <q', w[0] w[1]>.
        std::vector<ControlId> mids;
        for (std::size_t j = 1; j + 1 < k; ++j)
            mids.push_back(out.add_control(pds.controls[r.from] + "~" + std::to_string(id) + "." +
                                           std::to_string(j)));
        out.rules.push_back({r.from, r.top, r.label, mids[0], {r.push[k - 2], r.push[k - 1]}});
        for (std::size_t j = 1; j + 1 < k; ++j) {
            ControlId next = j + 1 < k - 1 ? mids[j] : r.to;
            out.rules.push_back({mids[j - 1], r.push[k - 1 - j], std::nullopt, next,
                                 {r.push[k - 2 - j], r.push[k - 1 - j]}});
        }
    }
    return out;
}

Cfg pds_to_cfg(const Pds& pds) {
    for (const auto& r : pds.rules)
        if (r.push.size() > 2)
            throw ContractError("pds_to_cfg needs a normalised PDS (pushes of at most two symbols)");
    pds.validate();

    // Controls plus a draining sink that pops everything once a final control
    // has been visited; acceptance becomes "empty stack in the sink".
    const auto drain = static_cast<ControlId>(pds.controls.size());
    const std::size_t num_controls = pds.controls.size() + 1;

    struct Move {
        std::optional<SymbolId> label;
        ControlId to;
        Word push;
    };
    std::map<std::pair<ControlId, SymbolId>, std::vector<Move>> moves;
    for (const auto& r : pds.rules)
        moves[{r.from, r.top}].push_back({r.label, r.to, r.push});
    for (ControlId f : pds.finals)
        for (SymbolId a : pds.stack_alphabet)
            moves[{f, a}].push_back({std::nullopt, drain, {a}});
    for (SymbolId a : pds.stack_alphabet)
        moves[{drain, a}].push_back({std::nullopt, drain, {}});

    Cfg g;
    for (SymbolId o : pds.output_alphabet)
        g.add_terminal(o);
    NontermId start = g.add_nonterminal("S");
    g.set_start(start);

    using Triple = std::tuple<ControlId, SymbolId, ControlId>;
    std::map<Triple, NontermId> index;
    std::vector<Triple> pending;
    auto control_name = [&](ControlId c) { return c == drain ? std::string("<drain>") : pds.controls[c]; };
    auto triple = [&](ControlId p, SymbolId a, ControlId q) {
        auto [it, inserted] = index.try_emplace({p, a, q}, 0);
        if (inserted) {
            it->second = g.add_nonterminal("[" + control_name(p) + "," + std::to_string(a) + "," +
                                           control_name(q) + "]");
            pending.push_back({p, a, q});
        }
        return it->second;
    };
    g.add_production(start, {GSymbol::nonterm(triple(pds.initial, kBottom, drain))});

    while (!pending.empty()) {
        auto [p, a, q] = pending.back();
        pending.pop_back();
        const NontermId head = index.at({p, a, q});
        auto it = moves.find({p, a});
        if (it == moves.end())
            continue;
        for (const Move& m : it->second) {
            std::vector<GSymbol> prefix;
            if (m.label)
                prefix.push_back(GSymbol::term(*m.label));
            if (m.push.empty()) {
                if (m.to == q)
                    g.add_production(head, prefix);
            } else if (m.push.size() == 1) {
                auto body = prefix;
                body.push_back(GSymbol::nonterm(triple(m.to, m.push[0], q)));
                g.add_production(head, std::move(body));
            } else {
                for (ControlId mid = 0; mid < num_controls; ++mid) {
                    auto body = prefix;
                    body.push_back(GSymbol::nonterm(triple(m.to, m.push[0], mid)));
                    body.push_back(GSymbol::nonterm(triple(mid, m.push[1], q)));
                    g.add_production(head, std::move(body));
                }
            }
        }
    }
    return g;
}

}  // namespace napds
