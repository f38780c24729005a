#include "napds/napds.hh"

#include <algorithm>

#include "napds/errors.hh"

namespace napds {

ControlId NaPds::add_control(std::string name) {
    controls.push_back(std::move(name));
    return static_cast<ControlId>(controls.size() - 1);
}

RuleId NaPds::add_rule(NaRule rule) {
    rules.push_back(std::move(rule));
    return static_cast<RuleId>(rules.size() - 1);
}

std::optional<ControlId> NaPds::find_control(std::string_view name) const {
    auto it = std::find(controls.begin(), controls.end(), name);
    if (it == controls.end())
        return std::nullopt;
    return static_cast<ControlId>(it - controls.begin());
}

namespace {

void validate_process(const ParamInstance& inst, const NaPds& p, const std::string& who) {
    auto fail = [&](const std::string& msg) { throw InputError(who + ": " + msg); };
    if (p.controls.empty())
        fail("no control states");
    if (p.initial >= p.controls.size())
        fail("initial control is undeclared");
    if (std::find(p.stack_alphabet.begin(), p.stack_alphabet.end(), kBottom) == p.stack_alphabet.end())
        fail("stack alphabet lacks the bottom symbol");
    auto in_stack = [&](SymbolId s) {
        return std::find(p.stack_alphabet.begin(), p.stack_alphabet.end(), s) != p.stack_alphabet.end();
    };
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const NaRule& r = p.rules[i];
        const std::string where = "rule " + std::to_string(i) + ": ";
        if (r.from >= p.controls.size() || r.to >= p.controls.size())
            fail(where + "undeclared control");
        if (!in_stack(r.top) || !std::all_of(r.push.begin(), r.push.end(), in_stack))
            fail(where + "undeclared stack symbol");
        if (!respects_bottom_discipline(r.top, r.push))
            fail(where + "the bottom symbol $ may be neither pushed nor popped");
        if (r.action.kind != ActionKind::internal) {
            if (r.action.var >= inst.variables.size())
                fail(where + "undeclared variable");
            if (r.action.value >= inst.variables[r.action.var].values.size())
                fail(where + "value outside the variable's alphabet");
        }
    }
}

}  // namespace

void ParamInstance::validate() const {
    if (!symbols)
        throw InputError("instance has no symbol table");
    if (variables.empty())
        throw InputError("at least one variable is required");
    for (const auto& v : variables) {
        if (v.values.empty())
            throw InputError("variable " + v.name + " has no values");
        if (v.initial >= v.values.size())
            throw InputError("variable " + v.name + " has an undeclared initial value");
    }
    validate_process(*this, master, "master");
    validate_process(*this, slave, "slave");
    if (target >= master.controls.size())
        throw InputError("target is not a master control");
}

bool same_instance(const ParamInstance& a, const ParamInstance& b) {
    if (a.variables != b.variables || a.target != b.target)
        return false;
    auto names = [](const ParamInstance& inst, const Word& w) {
        std::vector<std::string> out;
        for (SymbolId s : w)
            out.push_back(inst.symbols->name(s));
        return out;
    };
    auto same_process = [&](const NaPds& p, const NaPds& q) {
        if (p.controls != q.controls || p.initial != q.initial || p.rules.size() != q.rules.size())
            return false;
        auto sp = names(a, p.stack_alphabet), sq = names(b, q.stack_alphabet);
        std::sort(sp.begin(), sp.end());
        std::sort(sq.begin(), sq.end());
        if (sp != sq)
            return false;
        for (std::size_t i = 0; i < p.rules.size(); ++i) {
            const NaRule& r = p.rules[i];
            const NaRule& s = q.rules[i];
            if (r.from != s.from || r.to != s.to || !(r.action == s.action) ||
                a.symbols->name(r.top) != b.symbols->name(s.top) ||
                names(a, r.push) != names(b, s.push))
                return false;
        }
        return true;
    };
    return same_process(a.master, b.master) && same_process(a.slave, b.slave);
}

std::string action_name(const ParamInstance& inst, const Action& action) {
    if (action.kind == ActionKind::internal)
        return "internal";
    const Variable& v = inst.variables.at(action.var);
    std::string arg = inst.variables.size() == 1 ? v.values.at(action.value)
                                                 : v.name + "=" + v.values.at(action.value);
    return (action.kind == ActionKind::read ? "r(" : "w(") + arg + ")";
}

}  // namespace napds
