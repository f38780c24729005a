// Pushdown systems with output labels, forward-saturation reachability and
// the PDS to CFG translation.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "napds/cfg.hh"
#include "napds/symbols.hh"

namespace napds {

using ControlId = std::uint32_t;
using RuleId = std::uint32_t;

struct PdsRule {
    ControlId from;
    SymbolId top;
    std::optional<SymbolId> label;  // nullopt is the silent label
    ControlId to;
    Word push;  // new stack prefix, top first

    friend bool operator==(const PdsRule&, const PdsRule&) = default;
};

/// The bottom symbol is neither pushed nor popped: with top = $ the pushed
/// word ends in $ and has no other $, otherwise it has none at all.
bool respects_bottom_discipline(SymbolId top, const Word& push);

struct Pds {
    std::vector<std::string> controls;  // names; ids are indices
    std::vector<SymbolId> stack_alphabet;  // includes kBottom
    std::vector<SymbolId> output_alphabet;
    std::vector<PdsRule> rules;
    ControlId initial = 0;
    std::vector<ControlId> finals;

    ControlId add_control(std::string name);
    RuleId add_rule(PdsRule rule);
    bool is_final(ControlId c) const;
    /// Throws ContractError when an invariant is violated.
    void validate() const;
};

struct PdsConfig {
    ControlId control;
    Word stack;  // top first; the last symbol is kBottom

    friend bool operator==(const PdsConfig&, const PdsConfig&) = default;
};

/// Applies one rule; nullopt if it is not enabled.
std::optional<PdsConfig> pds_apply(const Pds& pds, const PdsConfig& config, RuleId rule);

struct ReachResult {
    bool reachable = false;
    std::vector<RuleId> trace;  // replays from <initial, $>
};

/// Is a configuration with a control in `targets` reachable from
/// <initial, $>? On success the trace is a replayable rule sequence.
ReachResult pds_control_reachable(const Pds& pds, std::span<const ControlId> targets);

/// Language-preserving split of pushes longer than two symbols through fresh
/// silent controls.
Pds pds_normalize(const Pds& pds);

/// CFG with L(cfg) = L(pds) (acceptance: final control, any stack). The input
/// must push at most two symbols per rule (ContractError otherwise).
Cfg pds_to_cfg(const Pds& pds);

}  // namespace napds
