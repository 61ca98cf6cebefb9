#include "sic/game.hh"

#include <algorithm>

#include "sic/diag.hh"

namespace sic {

using bdd::Manager;
using bdd::Ref;

std::vector<int> Arena::primed_bits() const {
  std::vector<int> out;
  for (int b : state_bits) out.push_back(Manager::twin(b));
  return out;
}

std::vector<std::pair<int, int>> Arena::prime_map() const {
  std::vector<std::pair<int, int>> out;
  for (int b : state_bits) out.emplace_back(b, Manager::twin(b));
  return out;
}

namespace {

void require_unprimed(const Arena& a, Ref x, const char* who) {
  std::vector<int> bits = a.state_bits;
  std::sort(bits.begin(), bits.end());
  for (int b : a.mgr->support(x))
    if (Manager::is_primed(b) || !std::binary_search(bits.begin(), bits.end(), b))
      throw UsageError(std::string(who) +
                       ": state set mentions bits outside the arena's "
                       "unprimed state space");
}

// Cube of one state out of a full kernel assignment, restricted to the
// arena's state bits.
Ref state_cube(const Arena& a, const std::vector<bool>& assignment) {
  Manager& m = *a.mgr;
  Ref r = m.one();
  for (int b : a.state_bits) {
    Ref bit = m.var(b);
    r = m.conj(r, assignment[static_cast<std::size_t>(b)] ? bit : m.negate(bit));
  }
  return r;
}

}  // namespace

Ref pre(const Arena& a, Ref t, Ref x) {
  require_unprimed(a, x, "pre");
  Manager& m = *a.mgr;
  Ref primed = m.rename(x, a.prime_map());
  return m.exists(a.primed_bits(), m.conj(t, primed));
}

Ref post(const Arena& a, Ref t, Ref x) {
  require_unprimed(a, x, "post");
  Manager& m = *a.mgr;
  Ref image = m.exists(a.state_bits, m.conj(t, x));
  std::vector<std::pair<int, int>> back;
  for (int b : a.state_bits) back.emplace_back(Manager::twin(b), b);
  return m.rename(image, back);
}

Fix attr_output(const Arena& a, Ref err) {
  Manager& m = *a.mgr;
  Fix fix{m.zero(), 0};
  for (;;) {
    Ref next = m.disj(err, pre(a, a.t_out, fix.set));
    if (next == fix.set) return fix;
    fix.set = next;
    ++fix.iterations;
  }
}

Fix win_safe(const Arena& a, Ref safe) {
  Manager& m = *a.mgr;
  Fix fix{m.one(), 0};
  for (;;) {
    Ref next = m.conj(safe, m.negate(pre(a, a.t_out, m.negate(fix.set))));
    if (next == fix.set) return fix;
    fix.set = next;
    ++fix.iterations;
  }
}

Fix reachable(const Arena& a, Ref t, Ref init) {
  Manager& m = *a.mgr;
  Fix fix{init, 0};
  for (;;) {
    Ref next = m.disj(fix.set, post(a, t, fix.set));
    if (next == fix.set) return fix;
    fix.set = next;
    ++fix.iterations;
  }
}

std::optional<std::vector<std::vector<bool>>> extract_trace(const Arena& a,
                                                            Ref t, Ref init,
                                                            Ref target) {
  Manager& m = *a.mgr;
  // Forward BFS layers up to the first one touching the target.
  std::vector<Ref> layers{init};
  Ref visited = init;
  while (m.is_false(m.conj(layers.back(), target))) {
    Ref next = m.conj(post(a, t, layers.back()), m.negate(visited));
    if (m.is_false(next)) return std::nullopt;
    layers.push_back(next);
    visited = m.disj(visited, next);
  }
  // Walk backwards picking one concrete state per layer.
  std::vector<std::vector<bool>> trace(layers.size());
  Ref here = m.conj(layers.back(), target);
  trace.back() = *m.pick_cube(here);
  for (std::size_t k = layers.size() - 1; k-- > 0;) {
    Ref cube = state_cube(a, trace[k + 1]);
    Ref pred = m.conj(layers[k], pre(a, t, cube));
    trace[k] = *m.pick_cube(pred);
  }
  return trace;
}

}  // namespace sic
