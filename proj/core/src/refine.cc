#include "sic/refine.hh"

#include <algorithm>

#include "sic/diag.hh"

namespace sic {

namespace {

using bdd::Ref;

void check_instances(const SymbolicInterface& p, const SymbolicInterface& q) {
  if (p.mgr != q.mgr)
    throw UsageError("refinement needs both interfaces compiled in one manager");
  auto one_way = [](const SymbolicInterface& a, const SymbolicInterface& b) {
    for (const CompiledVar& v : a.vars) {
      if (!v.info.is_global) continue;
      const VarInfo* other = b.src->find_var(v.info.name);
      if (!other || !other->is_global)
        throw UsageError("global '" + v.info.name + "' is not tracked by '" +
                         b.src->name + "'");
      if (b.cvar(v.info.name).bits != v.bits)
        throw UsageError("global '" + v.info.name +
                         "' was compiled through different tables");
    }
  };
  one_way(p, q);
  one_way(q, p);
}

std::vector<std::pair<int, int>> triple_prime_map(const SymbolicInterface& p,
                                                  const SymbolicInterface& q) {
  std::vector<std::pair<int, int>> map = p.prime_map();
  for (const auto& pr : q.prime_map()) map.push_back(pr);
  std::sort(map.begin(), map.end());
  map.erase(std::unique(map.begin(), map.end()), map.end());
  return map;
}

std::vector<int> primed_side(const SymbolicInterface& si) {
  std::vector<int> bits = si.local_bits(true);
  for (int b : si.global_bits(true)) bits.push_back(b);
  return bits;
}

struct Cond {
  RefineReason reason;
  std::string action;
  Ref pred;  // over the unprimed triple space
};

// The per-action refinement conditions against one relation iterate:
// input moves Q accepts must be matched by P, output moves P produces
// must be matched by Q, each landing inside the (primed) relation.
std::vector<Cond> step_conditions(const SymbolicInterface& p,
                                  const SymbolicInterface& q, Ref r) {
  bdd::Manager& m = *p.mgr;
  Ref rp = m.rename(r, triple_prime_map(p, q));
  std::vector<Cond> conds;
  std::vector<int> q_side = primed_side(q);
  std::vector<int> p_side = primed_side(p);
  for (const std::string& a : q.src->input_alphabet()) {
    Ref ex = m.exists(p.local_bits(true), m.conj(p.in_rel(a), rp));
    conds.push_back({RefineReason::InputOk, a,
                     m.forall(q_side, m.implies(q.in_rel(a), ex))});
  }
  for (const std::string& a : p.src->output_alphabet()) {
    Ref ex = m.exists(q.local_bits(true), m.conj(q.out_rel(a), rp));
    conds.push_back({RefineReason::OutputOk, a,
                     m.forall(p_side, m.implies(p.out_rel(a), ex))});
  }
  return conds;
}

std::vector<Ref> sim_iterates(const SymbolicInterface& p,
                              const SymbolicInterface& q) {
  bdd::Manager& m = *p.mgr;
  std::vector<Ref> rs;
  Ref r = m.conj(p.domain, q.domain);
  rs.push_back(r);
  for (;;) {
    Ref next = r;
    for (const Cond& c : step_conditions(p, q, r)) next = m.conj(next, c.pred);
    if (next == r) break;
    r = next;
    rs.push_back(r);
  }
  return rs;
}

Valuation locals_of(const SymbolicInterface& si,
                    const std::vector<bool>& assignment) {
  Valuation v;
  for (const CompiledVar& cv : si.vars) {
    if (cv.info.is_global) continue;
    long offset = 0;
    for (int b : cv.bits)
      offset = (offset << 1) |
               (assignment[static_cast<std::size_t>(b)] ? 1 : 0);
    v[cv.info.name] = cv.info.lo + offset;
  }
  return v;
}

Valuation globals_of(const SymbolicInterface& si,
                     const std::vector<bool>& assignment) {
  Valuation v;
  for (const CompiledVar& cv : si.vars) {
    if (!cv.info.is_global) continue;
    long offset = 0;
    for (int b : cv.bits)
      offset = (offset << 1) |
               (assignment[static_cast<std::size_t>(b)] ? 1 : 0);
    v[cv.info.name] = cv.info.lo + offset;
  }
  return v;
}

Ref locals_cube(const SymbolicInterface& si, const Valuation& v) {
  bdd::Manager& m = *si.mgr;
  Ref r = m.one();
  for (const CompiledVar& cv : si.vars)
    if (!cv.info.is_global)
      r = m.conj(r, si.value_cube(cv, v.at(cv.info.name), false));
  return r;
}

Ref globals_cube(const SymbolicInterface& si, const Valuation& v) {
  bdd::Manager& m = *si.mgr;
  Ref r = m.one();
  for (const CompiledVar& cv : si.vars)
    if (cv.info.is_global)
      r = m.conj(r, si.value_cube(cv, v.at(cv.info.name), false));
  return r;
}

}  // namespace

Fix alt_sim(const SymbolicInterface& p, const SymbolicInterface& q) {
  check_instances(p, q);
  std::vector<Ref> rs = sim_iterates(p, q);
  return Fix{rs.back(), static_cast<int>(rs.size()) - 1};
}

RefineResult refines(const SymbolicInterface& p, const SymbolicInterface& q) {
  check_instances(p, q);
  bdd::Manager& m = *p.mgr;
  RefineResult res;
  res.relation = m.zero();

  for (const std::string& a : q.src->input_alphabet()) {
    const ActionSpec* own = p.src->find_action(a);
    if (!own || !own->in_input()) {
      res.counterexample =
          RefineCounterexample{RefineReason::Alphabet, a, false, {}, {}, {}};
      return res;
    }
  }
  for (const std::string& a : p.src->output_alphabet()) {
    const ActionSpec* own = q.src->find_action(a);
    if (!own || !own->in_output()) {
      res.counterexample =
          RefineCounterexample{RefineReason::Alphabet, a, false, {}, {}, {}};
      return res;
    }
  }

  std::vector<Ref> rs = sim_iterates(p, q);
  res.relation = rs.back();
  res.iterations = static_cast<int>(rs.size()) - 1;

  Ref matched = m.exists(p.local_bits(false), m.conj(p.init, rs.back()));
  Ref bad = m.conj(q.init, m.negate(matched));
  if (m.is_false(bad)) {
    res.refines = true;
    return res;
  }

  auto pick = m.pick_cube(bad);
  RefineCounterexample ce;
  ce.reason = RefineReason::Init;
  ce.q_locals = locals_of(q, *pick);
  ce.globals = globals_of(q, *pick);
  Ref gcube = globals_cube(q, ce.globals);

  Ref cand = m.conj(p.init, gcube);
  if (!m.is_false(cand)) {
    ce.has_triple = true;
    auto pp = m.pick_cube(cand);
    ce.p_locals = locals_of(p, *pp);
    Ref triple = m.conj(m.conj(locals_cube(p, ce.p_locals),
                               locals_cube(q, ce.q_locals)),
                        gcube);
    // The triple starts inside the domain product and is unrelated at
    // the end, so some iterate dropped it; name the first condition
    // that excluded it there.
    for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
      if (m.is_false(m.conj(triple, rs[k])) ||
          !m.is_false(m.conj(triple, rs[k + 1])))
        continue;
      for (const Cond& c : step_conditions(p, q, rs[k])) {
        if (!m.is_false(m.conj(triple, c.pred))) continue;
        ce.reason = c.reason;
        ce.action = c.action;
        break;
      }
      break;
    }
  }
  res.counterexample = ce;
  return res;
}

}  // namespace sic
