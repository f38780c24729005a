// Explicit-state bounded simulation of an NPDS with n slave copies.
#pragma once

#include <cstdint>
#include <vector>

#include "napds/napds.hh"

namespace napds {

enum class SimVerdict { reached, not_reached, inconclusive };

struct SimulateOptions {
    std::uint32_t n = 0;
    std::size_t depth = 25;
    std::size_t stack_bound = 8;
    std::size_t max_configs = 2'000'000;
    bool symmetry = true;  // canonicalise slave order
    bool dedup = true;  // without it the search is a plain BFS tree
};

struct SimResult {
    SimVerdict verdict = SimVerdict::not_reached;
    Trace trace;  // shortest, when reached
    std::size_t explored = 0;
    bool depth_cut = false;  // some configuration had successors beyond the depth bound
    bool stack_cut = false;  // some successor exceeded the stack bound

    /// Not reached and nothing was pruned: no run of this n reaches the target.
    bool exhausted() const { return verdict == SimVerdict::not_reached && !depth_cut && !stack_cut; }
};

/// BFS up to the bounds. Exceeding max_configs yields inconclusive, never
/// not_reached.
SimResult simulate(const ParamInstance& inst, const SimulateOptions& options);

/// Does the trace run from the initial configuration with n slaves, every
/// step enabled, and end with the master in the target control? Process or
/// rule indices out of range raise InputError.
bool replay(const ParamInstance& inst, std::uint32_t n, const Trace& trace);

}  // namespace napds
