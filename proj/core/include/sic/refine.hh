#pragma once

#include <optional>
#include <string>

#include "sic/game.hh"
#include "sic/symbolic.hh"

namespace sic {

// Why a refinement check came back negative: a structural alphabet
// violation, an initial state of the abstract side with no related
// concrete initial state, or the condition that first dropped the
// reported triple out of the simulation relation.
enum class RefineReason { Alphabet, Init, InputOk, OutputOk };

struct RefineCounterexample {
  RefineReason reason = RefineReason::Alphabet;
  std::string action;  // offending action (empty for Init)
  bool has_triple = false;
  Valuation p_locals;  // empty when P has no initial state with `globals`
  Valuation q_locals;
  Valuation globals;
};

struct RefineResult {
  bool refines = false;
  bdd::Ref relation;  // the greatest alternating simulation
  int iterations = 0;
  std::optional<RefineCounterexample> counterexample;
};

// Greatest alternating-simulation relation over (P's unprimed locals,
// Q's unprimed locals, shared unprimed globals): a triple survives as
// long as every input move Q accepts is matched by P landing related,
// and every output move P produces is matched by Q landing related.
// Absent relations read as FALSE, so alphabet gaps shrink the relation
// rather than fault. The instances must share a manager and identify
// the same globals bit for bit (UsageError otherwise); passing the same
// instance twice collapses the triple space to its diagonal.
Fix alt_sim(const SymbolicInterface& p, const SymbolicInterface& q);

// Whether P can replace Q: P listens to at least Q's inputs, emits at
// most Q's outputs (checked structurally first), and every initial
// state of Q is related to some initial state of P over the same
// global valuation.
RefineResult refines(const SymbolicInterface& p, const SymbolicInterface& q);

}  // namespace sic
