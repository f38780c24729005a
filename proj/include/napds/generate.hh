// Instance generator following the intersection-of-two-CFLs shape.
#pragma once

#include "napds/cfg.hh"
#include "napds/napds.hh"

namespace napds {

/// One variable; the slave chooses a role. The writer role announces itself,
/// then writes a word of L(left) one letter at a time and waits for an
/// acknowledgement after each. The reader role reads a word of L(right) the
/// same way and finally writes `done`, which the master waits for. With one
/// writer and one reader this needs L(left) and L(right) to intersect, but
/// extra copies may cheat. Grammar terminals are named through `symbols`.
ParamInstance generate_intersection_instance(const Cfg& left, const Cfg& right,
                                             const SymbolTable& symbols);

}  // namespace napds
