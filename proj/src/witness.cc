#include "napds/witness.hh"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

#include "napds/errors.hh"
#include "napds/oracle.hh"

namespace napds {

namespace {

constexpr std::size_t kNowhere = std::numeric_limits<std::size_t>::max();

struct MatchedRule {
    RuleId slave_rule;
    std::optional<std::size_t> ypos;  // position in the consumed word, for labelled rules
    bool final = false;  // the write of g itself
};

/// A run of P_w(g) to f whose label sequence is a subword of y.
std::vector<MatchedRule> match_run(const WritePds& wp, const Word& y) {
    const std::size_t slots = y.size() + 1;
    Pds m;
    for (std::size_t c = 0; c < wp.pds.controls.size(); ++c)
        for (std::size_t i = 0; i < slots; ++i)
            m.add_control(wp.pds.controls[c] + "@" + std::to_string(i));
    m.stack_alphabet = wp.pds.stack_alphabet;
    m.initial = static_cast<ControlId>(wp.pds.initial * slots);
    auto at = [&](ControlId c, std::size_t i) { return static_cast<ControlId>(c * slots + i); };
    std::vector<std::pair<RuleId, std::optional<std::size_t>>> meaning;
    for (RuleId r = 0; r < wp.pds.rules.size(); ++r) {
        const PdsRule& rule = wp.pds.rules[r];
        for (std::size_t i = 0; i < slots; ++i) {
            if (!rule.label) {
                m.add_rule({at(rule.from, i), rule.top, std::nullopt, at(rule.to, i), rule.push});
                meaning.emplace_back(r, std::nullopt);
                continue;
            }
            for (std::size_t p = i; p < y.size(); ++p)
                if (y[p] == *rule.label) {
                    m.add_rule({at(rule.from, i), rule.top, std::nullopt, at(rule.to, p + 1), rule.push});
                    meaning.emplace_back(r, p);
                }
        }
    }
    std::vector<ControlId> targets;
    for (std::size_t i = 0; i < slots; ++i)
        targets.push_back(at(wp.final_control, i));
    ReachResult reach = pds_control_reachable(m, targets);
    if (!reach.reachable)
        throw InternalError("witness: no slave run explains the word a read language accepted");
    std::vector<MatchedRule> out;
    for (RuleId id : reach.trace) {
        auto [r, p] = meaning[id];
        out.push_back({wp.origin[r], p, wp.pds.rules[r].to == wp.final_control});
    }
    return out;
}

struct Group {
    std::uint32_t component;
    std::vector<std::size_t> positions;  // product positions of the automaton's steps
    std::vector<std::size_t> accepted;  // product positions of its accepted writes
    std::vector<MatchedRule> run;
    std::vector<std::size_t> effective;  // per run entry: where it happens (labelled ones)
    std::uint32_t copies = 0;
    bool relied_on = false;
};

Witness schedule(const ParamInstance& inst, const CheckResult& result, std::vector<Group> groups,
                 bool merge) {
    const auto& trace = result.trace;
    std::vector<bool> served(trace.size(), false);
    // relocated[t]: (group, run index) moved to just before the accepted write at t
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> relocated(trace.size());

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        Group& g = groups[gi];
        std::size_t lo = 0;
        bool have_lo = false;
        std::vector<std::size_t> labelled;
        for (std::size_t k = 0; k < g.run.size(); ++k)
            if (g.run[k].ypos)
                labelled.push_back(k);
        g.effective.assign(g.run.size(), kNowhere);
        for (std::size_t li = 0; li < labelled.size(); ++li) {
            const std::size_t k = labelled[li];
            const std::size_t original = g.positions[*g.run[k].ypos];
            g.effective[k] = original;
            const NaRule& rule = inst.slave.rules[g.run[k].slave_rule];
            if (merge && rule.action.kind == ActionKind::write) {
                const std::size_t hi = li + 1 < labelled.size() ? g.positions[*g.run[labelled[li + 1]].ypos]
                                                                : g.accepted.front();
                std::optional<std::size_t> best;
                for (std::size_t t = have_lo ? lo + 1 : 0; t < hi; ++t) {
                    const ProductStep& s = trace[t];
                    if (s.kind != StepKind::accepted_write)
                        continue;
                    const ReadLanguage& lang = result.languages[s.component];
                    if (lang.var != rule.action.var || lang.value != rule.action.value)
                        continue;
                    auto dist = [&](std::size_t x) { return x > original ? x - original : original - x; };
                    if (!best || (served[*best] && !served[t]) ||
                        (served[*best] == served[t] && dist(t) < dist(*best)))
                        best = t;
                }
                if (best) {
                    served[*best] = true;
                    relocated[*best].emplace_back(gi, k);
                    g.effective[k] = *best;
                    g.relied_on = true;
                }
            }
            lo = g.effective[k];
            have_lo = true;
        }
    }

    // Non-served accepted writes, per group, get one copy each.
    std::vector<std::vector<std::size_t>> finals(groups.size());
    std::map<std::uint32_t, std::size_t> group_of;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        group_of[groups[gi].component] = gi;
    std::uint32_t n = 0;
    std::vector<std::uint32_t> first_pid(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        Group& g = groups[gi];
        for (std::size_t t : g.accepted)
            if (!served[t])
                finals[gi].push_back(t);
        g.copies = static_cast<std::uint32_t>(finals[gi].size());
        if (g.copies == 0 && g.relied_on)
            g.copies = 1;
        first_pid[gi] = n + 1;
        n += g.copies;
    }

    Witness w;
    w.n = n;
    w.merged = merge;
    std::vector<std::vector<std::size_t>> cursor(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        cursor[gi].assign(groups[gi].copies, 0);
    // Emits copy c of group gi up to and including run entry k.
    auto advance = [&](std::size_t gi, std::uint32_t c, std::size_t k) {
        const Group& g = groups[gi];
        for (std::size_t& cur = cursor[gi][c]; cur <= k; ++cur) {
            const MatchedRule& m = g.run[cur];
            w.trace.push_back({first_pid[gi] + c, m.slave_rule});
            w.realises_kill.push_back(!m.final &&
                                      inst.slave.rules[m.slave_rule].action.kind == ActionKind::write);
        }
    };
    // Labelled entries by effective position (relocated ones are handled at
    // their accepted write).
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> at(trace.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t k = 0; k < groups[gi].run.size(); ++k)
            if (groups[gi].run[k].ypos && groups[gi].effective[k] == groups[gi].positions[*groups[gi].run[k].ypos])
                at[groups[gi].effective[k]].emplace_back(gi, k);

    for (std::size_t t = 0; t < trace.size(); ++t) {
        const ProductStep& s = trace[t];
        switch (s.kind) {
        case StepKind::master:
            w.trace.push_back({0, s.master_rule});
            w.realises_kill.push_back(false);
            break;
        case StepKind::nfa_read:
        case StepKind::nfa_kill:
            for (auto [gi, k] : at[t])
                for (std::uint32_t c = 0; c < groups[gi].copies; ++c)
                    advance(gi, c, k);
            break;
        case StepKind::accepted_write: {
            for (auto [gi, k] : relocated[t])
                for (std::uint32_t c = 0; c < groups[gi].copies; ++c)
                    advance(gi, c, k);
            if (served[t])
                break;
            const std::size_t gi = group_of.at(s.component);
            auto& f = finals[gi];
            const auto c = static_cast<std::uint32_t>(std::find(f.begin(), f.end(), t) - f.begin());
            advance(gi, c, groups[gi].run.size() - 1);
            break;
        }
        }
    }
    return w;
}

}  // namespace

Witness reconstruct_witness(const ParamInstance& inst, const CheckResult& result) {
    if (!result.reachable)
        throw ContractError("reconstruct_witness needs a reachable check result");
    const auto& trace = result.trace;
    std::map<std::uint32_t, Group> by_component;
    for (std::size_t t = 0; t < trace.size(); ++t) {
        const ProductStep& s = trace[t];
        if (s.kind == StepKind::master)
            continue;
        Group& g = by_component[s.component];
        g.component = s.component;
        if (s.kind == StepKind::accepted_write)
            g.accepted.push_back(t);
        else
            g.positions.push_back(t);
    }
    std::vector<Group> groups;
    for (auto& [c, g] : by_component) {
        if (g.accepted.empty())
            continue;
        Word y;
        for (std::size_t t : g.positions)
            y.push_back(trace[t].symbol);
        const ReadLanguage& lang = result.languages[c];
        g.run = match_run(build_write_pds(inst, result.alphabet, lang.var, lang.value), y);
        groups.push_back(std::move(g));
    }
    for (bool merge : {true, false}) {
        Witness w = schedule(inst, result, groups, merge);
        if (replay(inst, w.n, w.trace))
            return w;
    }
    throw InternalError("witness: the reconstructed schedule does not replay");
}

}  // namespace napds
