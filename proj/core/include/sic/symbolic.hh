#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sic/bdd.hh"
#include "sic/model.hh"

namespace sic {

// One interface variable bound to manager bits: `bits` holds the
// unprimed indices MSB first, the primed twin of each is bits[k]^1.
// Values are encoded as the offset from the domain's lower bound.
struct CompiledVar {
  VarInfo info;
  std::vector<int> bits;
};

// Binds interface variables to bits of one Manager. Globals are shared
// by name across all instances registered through the same table (equal
// domains required); locals are private to each (tag, name).
class VarTable {
 public:
  explicit VarTable(bdd::Manager& m) : mgr_(&m) {}
  bdd::Manager& manager() { return *mgr_; }
  std::vector<CompiledVar> instance(const Interface& i,
                                    const std::string& tag = "");

 private:
  bdd::Manager* mgr_;
  std::map<std::string, CompiledVar> globals_;
};

using Valuation = std::map<std::string, long>;

// The symbolic semantics of one interface instance: transition
// predicates per action, initial states, and domain constraints. All
// predicates imply the domain constraints on both rails.
struct SymbolicInterface {
  const Interface* src = nullptr;
  bdd::Manager* mgr = nullptr;
  std::string tag;
  std::vector<CompiledVar> vars;  // aligned with src->vars
  bdd::Ref init;
  bdd::Ref domain;         // unprimed tracked bits
  bdd::Ref domain_primed;  // their twins
  std::map<std::string, bdd::Ref> rho_out;  // output-alphabet actions only
  std::map<std::string, bdd::Ref> rho_in;   // input-alphabet actions only

  const CompiledVar& cvar(const std::string& name) const;
  bdd::Ref out_rel(const std::string& action) const;  // FALSE when absent
  bdd::Ref in_rel(const std::string& action) const;   // FALSE when absent

  std::vector<int> all_bits(bool primed) const;
  std::vector<int> local_bits(bool primed) const;
  std::vector<int> global_bits(bool primed) const;
  std::vector<std::pair<int, int>> prime_map() const;  // unprimed -> primed

  // Cube of one variable pinned to a value (FALSE outside its domain).
  bdd::Ref value_cube(const CompiledVar& v, long value, bool primed) const;
  // Cube of a full tracked-variable valuation; throws UsageError when a
  // variable is missing or out of domain.
  bdd::Ref state_cube(const Valuation& s, bool primed) const;
  // Reads the tracked variables out of a kernel assignment.
  Valuation decode(const std::vector<bool>& assignment, bool primed) const;
};

SymbolicInterface compile(const Interface& i, VarTable& table,
                          const std::string& tag = "");

// Compiles a boolean expression over the instance's variables. Primed
// references are resolved to twin bits; callers are expected to have
// validated the expression's reference discipline already.
bdd::Ref compile_bool(const Expr& e, const SymbolicInterface& si);

// All (action, successor) moves the interface itself can take from s.
std::vector<std::pair<std::string, Valuation>> out_moves(
    const SymbolicInterface& si, const Valuation& s);

struct InAcceptance {
  bool listening = false;
  std::vector<Valuation> responses;  // next local-variable valuations
};

// How the interface reacts in state s to an emission of `action` that
// updates the globals to `global_update`: not listening, rejected
// (listening with no responses), or the possible local responses.
InAcceptance in_accepts(const SymbolicInterface& si, const Valuation& s,
                        const std::string& action,
                        const Valuation& global_update);

}  // namespace sic
