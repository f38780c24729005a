#include "napds/oracle.hh"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "napds/detail/hash.hh"
#include "napds/errors.hh"

namespace napds {

namespace {

struct Proc {
    ControlId control;
    Word stack;  // top first

    friend auto operator<=>(const Proc&, const Proc&) = default;
};

struct Config {
    std::vector<ValueId> vals;
    std::vector<Proc> procs;  // master first

    std::vector<std::uint32_t> key() const {
        std::vector<std::uint32_t> k(vals.begin(), vals.end());
        for (const Proc& p : procs) {
            k.push_back(p.control);
            k.push_back(static_cast<std::uint32_t>(p.stack.size()));
            k.insert(k.end(), p.stack.begin(), p.stack.end());
        }
        return k;
    }
};

Config initial_config(const ParamInstance& inst, std::uint32_t n) {
    Config c;
    for (const Variable& v : inst.variables)
        c.vals.push_back(v.initial);
    c.procs.push_back({inst.master.initial, {kBottom}});
    for (std::uint32_t i = 0; i < n; ++i)
        c.procs.push_back({inst.slave.initial, {kBottom}});
    return c;
}

bool enabled(const Config& c, std::uint32_t proc, const NaRule& r) {
    const Proc& p = c.procs[proc];
    if (p.control != r.from || p.stack.front() != r.top)
        return false;
    return r.action.kind != ActionKind::read || c.vals[r.action.var] == r.action.value;
}

void apply(Config& c, std::uint32_t proc, const NaRule& r) {
    Proc& p = c.procs[proc];
    p.control = r.to;
    Word stack = r.push;
    stack.insert(stack.end(), p.stack.begin() + 1, p.stack.end());
    p.stack = std::move(stack);
    if (r.action.kind == ActionKind::write)
        c.vals[r.action.var] = r.action.value;
}

const NaPds& process_of(const ParamInstance& inst, std::uint32_t proc) {
    return proc == 0 ? inst.master : inst.slave;
}

/// Sorts the slaves; perm[i] is the pre-sort slot of sorted slot i.
std::vector<std::uint32_t> canonicalise(Config& c) {
    std::vector<std::uint32_t> perm(c.procs.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::stable_sort(perm.begin() + 1, perm.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return c.procs[a] < c.procs[b]; });
    std::vector<Proc> sorted;
    for (std::uint32_t i : perm)
        sorted.push_back(c.procs[i]);
    c.procs = std::move(sorted);
    return perm;
}

struct Node {
    std::uint32_t parent;
    TraceStep step;  // in the parent's slot numbering
    std::uint32_t depth;
};

}  // namespace

SimResult simulate(const ParamInstance& inst, const SimulateOptions& options) {
    SimResult result;
    std::vector<Config> configs;
    std::vector<Node> nodes;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VectorHash> seen;
    constexpr std::uint32_t kRoot = static_cast<std::uint32_t>(-1);

    auto add = [&](Config c, Node node) -> std::optional<std::uint32_t> {
        if (options.symmetry)
            canonicalise(c);
        if (options.dedup && !seen.try_emplace(c.key(), static_cast<std::uint32_t>(configs.size())).second)
            return std::nullopt;
        configs.push_back(std::move(c));
        nodes.push_back(node);
        return static_cast<std::uint32_t>(configs.size() - 1);
    };

    std::optional<std::uint32_t> goal;
    add(initial_config(inst, options.n), {kRoot, {0, 0}, 0});
    if (configs[0].procs[0].control == inst.target)
        goal = 0;
    for (std::size_t i = 0; !goal && i < configs.size(); ++i) {
        const bool at_bound = nodes[i].depth >= options.depth;
        for (std::uint32_t proc = 0; proc < configs[i].procs.size() && !goal; ++proc) {
            const NaPds& p = process_of(inst, proc);
            for (RuleId r = 0; r < p.rules.size(); ++r) {
                if (!enabled(configs[i], proc, p.rules[r]))
                    continue;
                Config next = configs[i];
                apply(next, proc, p.rules[r]);
                if (next.procs[proc].stack.size() > options.stack_bound) {
                    result.stack_cut = true;
                    continue;
                }
                if (at_bound) {
                    if (options.symmetry)
                        canonicalise(next);
                    if (!options.dedup || !seen.contains(next.key()))
                        result.depth_cut = true;
                    continue;
                }
                const bool hit = next.procs[0].control == inst.target;
                auto id = add(std::move(next), {static_cast<std::uint32_t>(i), {proc, r}, nodes[i].depth + 1});
                if (id && hit) {
                    goal = id;
                    break;
                }
                if (configs.size() > options.max_configs) {
                    result.verdict = SimVerdict::inconclusive;
                    result.explored = configs.size();
                    return result;
                }
            }
        }
    }
    result.explored = configs.size();
    if (!goal)
        return result;

    result.verdict = SimVerdict::reached;
    std::vector<std::uint32_t> path;
    for (std::uint32_t v = *goal; v != kRoot; v = nodes[v].parent)
        path.push_back(v);
    std::reverse(path.begin(), path.end());
    // Replay along the path, tracking which real process sits in each slot.
    Config cur = initial_config(inst, options.n);
    std::vector<std::uint32_t> slot_to_proc(cur.procs.size());
    std::iota(slot_to_proc.begin(), slot_to_proc.end(), 0u);
    if (options.symmetry)
        canonicalise(cur);
    for (std::size_t k = 1; k < path.size(); ++k) {
        const TraceStep s = nodes[path[k]].step;
        result.trace.push_back({slot_to_proc[s.process], s.rule});
        apply(cur, s.process, process_of(inst, s.process).rules[s.rule]);
        if (options.symmetry) {
            auto perm = canonicalise(cur);
            std::vector<std::uint32_t> next(perm.size());
            for (std::size_t j = 0; j < perm.size(); ++j)
                next[j] = slot_to_proc[perm[j]];
            slot_to_proc = std::move(next);
        }
    }
    return result;
}

bool replay(const ParamInstance& inst, std::uint32_t n, const Trace& trace) {
    Config c = initial_config(inst, n);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceStep& s = trace[i];
        if (s.process > n)
            throw InputError("trace step " + std::to_string(i + 1) + ": process " +
                             std::to_string(s.process) + " exceeds n = " + std::to_string(n));
        const NaPds& p = process_of(inst, s.process);
        if (s.rule >= p.rules.size())
            throw InputError("trace step " + std::to_string(i + 1) + ": no rule " + std::to_string(s.rule));
        if (!enabled(c, s.process, p.rules[s.rule]))
            return false;
        apply(c, s.process, p.rules[s.rule]);
    }
    return c.procs[0].control == inst.target;
}

}  // namespace napds
