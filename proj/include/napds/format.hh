// Text formats: instances, traces.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "napds/napds.hh"

namespace napds {

/// Parses the instance format; errors are InputError("line L:C: ...").
ParamInstance parse_instance(std::string_view text);

/// Canonical text; parse_instance(print_instance(i)) is the same instance.
std::string print_instance(const ParamInstance& inst);

/// `<process> <rule>` per line, `#` comments.
Trace parse_trace(std::string_view text);
std::string print_trace(const Trace& trace);

}  // namespace napds
