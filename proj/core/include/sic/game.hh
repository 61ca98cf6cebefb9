#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sic/bdd.hh"

namespace sic {

// Two-player arena over twin bit pairs: the Output player owns t_out
// (the system's autonomous moves), the Input player owns t_in (the
// environment's moves). Both relations span state_bits ∪ their twins.
struct Arena {
  bdd::Manager* mgr = nullptr;
  std::vector<int> state_bits;  // unprimed
  bdd::Ref t_out;
  bdd::Ref t_in;
  bdd::Ref domain;  // unprimed state-space constraint

  std::vector<int> primed_bits() const;
  std::vector<std::pair<int, int>> prime_map() const;  // unprimed -> primed
};

struct Fix {
  bdd::Ref set;
  int iterations = 0;  // strict changes until the chain stabilized
};

// { s | ∃s': (s,s') ⊨ t ∧ s' ∈ x }; x must be over the arena's
// unprimed state bits.
bdd::Ref pre(const Arena& a, bdd::Ref t, bdd::Ref x);

// Forward image of x under t, unprimed again.
bdd::Ref post(const Arena& a, bdd::Ref t, bdd::Ref x);

// µY. err ∨ pre(t_out, Y): states from which the system can force a
// visit to err on its own. Input moves never propagate the attractor —
// the environment steers away whenever it has the choice.
Fix attr_output(const Arena& a, bdd::Ref err);

// νX. safe ∧ ¬pre(t_out, ¬X), the complement-dual of attr_output over
// the full bit lattice: win_safe(safe).set == ¬attr_output(¬safe).set
// as identical node references.
Fix win_safe(const Arena& a, bdd::Ref safe);

// µX. init ∨ post(t, X).
Fix reachable(const Arena& a, bdd::Ref t, bdd::Ref init);

// Shortest path from init into target under t, as full kernel
// assignments (one per state); nothing when target is unreachable.
std::optional<std::vector<std::vector<bool>>> extract_trace(const Arena& a,
                                                            bdd::Ref t,
                                                            bdd::Ref init,
                                                            bdd::Ref target);

}  // namespace sic
