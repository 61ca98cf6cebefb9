#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sic/game.hh"
#include "sic/symbolic.hh"
#include "sic/trace.hh"

namespace sic {

// One synchronized step of the product: `emitter` fires `action`; the
// other side reacts through its input relation when it listens, or
// holds its locals still. The relation spans the joint bit space.
struct JointMove {
  std::string emitter;
  std::string action;
  bdd::Ref rel;
};

// States where `emitter` can fire `action` with an update the
// listening side refuses.
struct Rejection {
  std::string emitter;
  std::string action;
  bdd::Ref states;  // over unprimed joint bits
};

// The synchronized pair before pruning: joint moves per (emitter,
// action), the refusal states Err, and the joint initial predicate.
// Locals of both sides stay disjoint; shared globals are identified.
struct Product {
  const SymbolicInterface* p = nullptr;
  const SymbolicInterface* q = nullptr;
  std::vector<CompiledVar> vars;  // p's variables, then q's new ones
  bdd::Ref domain;
  bdd::Ref domain_primed;
  bdd::Ref init;
  std::vector<JointMove> moves;
  std::vector<Rejection> rejections;
  bdd::Ref err;    // ∨ of rejection states
  bdd::Ref t_out;  // ∨ of joint moves

  std::vector<int> all_bits(bool primed) const;
  std::vector<std::pair<int, int>> prime_map() const;
  Arena arena() const;  // t_in empty: both components only emit here
  bdd::Ref value_cube(const CompiledVar& v, long value, bool primed) const;
  bdd::Ref state_cube(const Valuation& s, bool primed) const;
  Valuation decode(const std::vector<bool>& assignment, bool primed) const;
};

// Builds the product; throws ComposeError on local-name clashes and
// UsageError when the interfaces do not share a manager/table.
Product product(const SymbolicInterface& p, const SymbolicInterface& q);

struct Compatibility {
  bdd::Ref w;     // ¬attractor ∧ joint domain
  Fix attractor;  // the error attractor the pair's own outputs force
};

// W: the joint states from which no sequence of the pair's own outputs
// can be forced into Err.
Compatibility compatible_states(const Product& prod);

class IncompatibleError : public Error {
 public:
  IncompatibleError(const std::string& msg, std::vector<VarInfo> vars_,
                    std::vector<TraceStep> witness_, std::string action_,
                    std::string emitter_)
      : Error(msg),
        vars(std::move(vars_)),
        witness(std::move(witness_)),
        action(std::move(action_)),
        emitter(std::move(emitter_)) {}

  std::vector<VarInfo> vars;       // joint declaration order
  std::vector<TraceStep> witness;  // shortest output path into Err
  std::string action;              // the emission refused at the end
  std::string emitter;
};

struct CompositionResult {
  ModuleAST module;     // guarded-command form of the composite
  Interface composite;  // `module`, validated
  bdd::Ref err;
  bdd::Ref w;
  Fix attractor;
};

// Composes two compatible interfaces into a new one whose moves are the
// joint moves restricted to W at both endpoints; throws
// IncompatibleError (with a witness trace) when no initial state lies
// in W. The module's text form parses and compiles back to the same
// relations.
CompositionResult compose(const SymbolicInterface& p,
                          const SymbolicInterface& q,
                          const std::string& name = "");

}  // namespace sic
