// Turning a product run into a concrete NPDS run with n slave copies.
#pragma once

#include <cstdint>
#include <vector>

#include "napds/napds.hh"
#include "napds/product.hh"

namespace napds {

struct Witness {
    std::uint32_t n = 0;
    Trace trace;
    /// Per step: a slave write the product abstracted as KILL.
    std::vector<bool> realises_kill;
    /// False when the copy-sharing schedule failed replay and the
    /// one-copy-per-accepted-write schedule was used instead.
    bool merged = true;
};

/// Needs a reachable CheckResult. Every accepted write gets a slave copy that
/// repeats a run of P_w(g) whose labels embed into the symbols the automaton
/// consumed; a copy's concrete write that the product saw as KILL may be
/// moved onto an accepted write of the same value, which then needs no copy
/// of its own. The result is checked by replay (InternalError on failure).
Witness reconstruct_witness(const ParamInstance& inst, const CheckResult& result);

}  // namespace napds
