#pragma once

#include <string>
#include <vector>

#include "sic/symbolic.hh"

namespace sic {

// One step of a witness trace: the label is "init" for the starting
// state, "a!" when the step fired output action a, "a?" for an input.
struct TraceStep {
  std::string label;
  Valuation state;
};

// One line per step, `label: name=value ...` with the variables in
// declaration order; booleans print as true/false.
std::string format_trace(const std::vector<VarInfo>& vars,
                         const std::vector<TraceStep>& steps);
std::string format_trace(const Interface& i,
                         const std::vector<TraceStep>& steps);

}  // namespace sic
