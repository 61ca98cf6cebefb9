#pragma once

#include <string>
#include <vector>

#include "sic/ast.hh"

namespace sic {

// A declared variable after validation. Booleans are carried as the
// range [0..1] with is_bool set, so domain logic is uniform.
struct VarInfo {
  std::string name;
  bool is_global = false;
  bool is_bool = false;
  long lo = 0, hi = 0;
  SourceSpan span;

  long card() const { return hi - lo + 1; }
  int bits() const;  // ceil(log2(card)); 0 for singleton domains
  bool in_domain(long v) const { return v >= lo && v <= hi; }
};

struct ActionSpec {
  std::string name;
  std::vector<Command> out_cmds;
  std::vector<Command> in_cmds;

  bool in_output() const { return !out_cmds.empty(); }
  bool in_input() const { return !in_cmds.empty(); }
};

// A validated sociable interface: the tracked variables are exactly the
// declared ones, init is satisfiable, and every command is well-typed
// with the primed-reference discipline enforced:
//   output: guard over unprimed tracked; assigns target primed tracked
//           (locals or globals), right sides over unprimed tracked.
//   input:  guard over unprimed tracked and primed globals; assigns
//           target primed locals only, right sides may also read primed
//           globals.
struct Interface {
  std::string name;
  std::vector<VarInfo> vars;        // declaration order
  std::vector<ActionSpec> actions;  // order of first appearance
  ExprPtr init;

  const VarInfo* find_var(const std::string& n) const;
  const ActionSpec* find_action(const std::string& n) const;
  std::vector<std::string> output_alphabet() const;
  std::vector<std::string> input_alphabet() const;
};

enum class Ty { Bool, Int };

// Expression type, assuming it already validated against i.
Ty type_of(const Expr& e, const Interface& i);

// Checks a parsed module against all interface invariants; throws
// ValidationError carrying one diagnostic per problem found.
Interface validate(const ModuleAST& m);

}  // namespace sic
