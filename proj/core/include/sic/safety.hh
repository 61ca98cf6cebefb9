#pragma once

#include <vector>

#include "sic/game.hh"
#include "sic/symbolic.hh"
#include "sic/trace.hh"

namespace sic {

enum class SafetyMode { Pessimistic, Optimistic };

// A safety question: does the interface stay inside the states where
// the invariant (a boolean expression over its tracked variables,
// written in the .si expression syntax) holds?
struct SafetyQuery {
  const SymbolicInterface* target = nullptr;
  ExprPtr invariant;
  SafetyMode mode = SafetyMode::Pessimistic;
};

struct PessimisticResult {
  bool safe = false;
  std::vector<TraceStep> trace;  // shortest violation; empty when safe
  int iterations = 0;            // reachability fixpoint steps
};

struct OptimisticResult {
  bool safe = false;
  bdd::Ref winning;    // domain states a helpful environment keeps safe
  int iterations = 0;  // safety-game fixpoint steps
};

// Checks the invariant's reference discipline (tracked variables only,
// unprimed, boolean) and compiles it over the instance's unprimed bits.
// Throws ValidationError listing every offence.
bdd::Ref compile_invariant(const Expr& phi, const SymbolicInterface& si);

// Safety under the worst environment: plain forward reachability over
// the interface's own outputs plus every input move the relation
// accepts, the primed globals being a free environment choice.
PessimisticResult check_pessimistic(const SymbolicInterface& si,
                                    const Expr& phi);

// Safety under the best environment: the environment may withhold all
// inputs forever, so only autonomous output moves can drive the
// interface out of the invariant.
OptimisticResult check_optimistic(const SymbolicInterface& si,
                                  const Expr& phi);

// Sanity diagnostics over an already-validated interface: warnings for
// alphabet actions that are never enabled and for fully inert
// interfaces. Never fails — the verdict is the (possibly empty) list.
std::vector<Diagnostic> well_formed(const SymbolicInterface& si);

}  // namespace sic
