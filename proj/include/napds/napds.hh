// Non-atomic pushdown systems and parameterised reachability instances.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "napds/pds.hh"
#include "napds/symbols.hh"

namespace napds {

using VarId = std::uint32_t;
using ValueId = std::uint32_t;  // index into Variable::values

struct Variable {
    std::string name;
    std::vector<std::string> values;
    ValueId initial = 0;

    friend bool operator==(const Variable&, const Variable&) = default;
};

enum class ActionKind : std::uint8_t { internal, read, write };

struct Action {
    ActionKind kind = ActionKind::internal;
    VarId var = 0;
    ValueId value = 0;

    static Action internal() { return {}; }
    static Action read(VarId v, ValueId g) { return {ActionKind::read, v, g}; }
    static Action write(VarId v, ValueId g) { return {ActionKind::write, v, g}; }

    friend bool operator==(const Action&, const Action&) = default;
};

struct NaRule {
    ControlId from;
    SymbolId top;
    Action action;
    ControlId to;
    Word push;  // top first

    friend bool operator==(const NaRule&, const NaRule&) = default;
};

struct NaPds {
    std::vector<std::string> controls;
    std::vector<SymbolId> stack_alphabet;  // includes kBottom
    std::vector<NaRule> rules;
    ControlId initial = 0;

    ControlId add_control(std::string name);
    RuleId add_rule(NaRule rule);
    std::optional<ControlId> find_control(std::string_view name) const;

    friend bool operator==(const NaPds&, const NaPds&) = default;
};

struct ParamInstance {
    std::shared_ptr<SymbolTable> symbols = std::make_shared<SymbolTable>();
    std::vector<Variable> variables;
    NaPds master;
    NaPds slave;
    ControlId target = 0;  // a master control

    /// Throws InputError naming the first broken invariant.
    void validate() const;
};

/// One step of an NPDS run: process 0 is the master, 1..n the slave copies.
struct TraceStep {
    std::uint32_t process;
    RuleId rule;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};
using Trace = std::vector<TraceStep>;

/// Structural equality; symbol ids are compared through their names.
bool same_instance(const ParamInstance& a, const ParamInstance& b);

/// "r(v)" for a single variable, "r(x=v)" otherwise; writes likewise.
std::string action_name(const ParamInstance& inst, const Action& action);

}  // namespace napds
