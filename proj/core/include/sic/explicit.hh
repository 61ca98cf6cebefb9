#pragma once

#include <cstdint>
#include <vector>

#include "sic/model.hh"

namespace sic {

// Explicit-state semantics of one interface, interpreted directly off
// the AST with no symbolic machinery involved; serves as the reference
// the symbolic layer is checked against, and must stay independent.
//
// States are mixed-radix indices over the declared variables, first
// declaration most significant. Global updates are indexed the same way
// over the global variables alone.
struct ExplicitGraph {
  const Interface* src = nullptr;
  std::uint64_t state_count = 0;
  std::uint64_t global_count = 0;  // product of global cardinalities

  std::vector<std::uint64_t> init_states;  // ascending

  struct ActionEdges {
    std::string action;
    bool has_out = false, has_in = false;
    // out_edges[s] = successor states, ascending unique.
    std::vector<std::vector<std::uint64_t>> out_edges;
    // in_resp[s][g] = successor states for global update g, ascending
    // unique; empty = rejected. Absent action = not listening.
    std::vector<std::vector<std::vector<std::uint64_t>>> in_resp;
  };
  std::vector<ActionEdges> actions;  // interface action order

  std::uint64_t index_of(const std::vector<long>& values) const;
  std::vector<long> values_of(std::uint64_t index) const;
  std::uint64_t global_index_of(const std::vector<long>& globals) const;
  std::vector<long> global_values_of(std::uint64_t index) const;
};

// Builds the graph; throws UsageError when the state space exceeds cap.
ExplicitGraph enumerate_explicit(const Interface& i, std::uint64_t cap);

// Environment for direct expression evaluation: current values for all
// tracked variables (declaration order), next values for globals when
// an input step is being evaluated.
struct EvalEnv {
  const Interface* src = nullptr;
  std::vector<long> current;
  std::vector<long> next_globals;  // aligned with global decls, may be empty
  long lookup(const std::string& name, bool primed) const;
};

long eval_int(const Expr& e, const EvalEnv& env);
bool eval_bool(const Expr& e, const EvalEnv& env);

}  // namespace sic
