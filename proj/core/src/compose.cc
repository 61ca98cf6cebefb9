#include "sic/compose.hh"

#include <algorithm>

#include "sic/diag.hh"

namespace sic {

namespace {

using bdd::Ref;

Ref val_cube(bdd::Manager& m, const CompiledVar& v, long value, bool primed) {
  if (!v.info.in_domain(value)) return m.zero();
  unsigned long offset = static_cast<unsigned long>(value - v.info.lo);
  Ref r = m.one();
  int n = static_cast<int>(v.bits.size());
  for (int k = 0; k < n; ++k) {
    int b = primed ? bdd::Manager::twin(v.bits[k]) : v.bits[k];
    Ref bit = m.var(b);
    bool set = (offset >> (n - 1 - k)) & 1ul;
    r = m.conj(r, set ? bit : m.negate(bit));
  }
  return r;
}

Ref frame_bits(bdd::Manager& m, const std::vector<int>& unprimed) {
  Ref f = m.one();
  for (int b : unprimed)
    f = m.conj(f, m.equiv(m.var(b), m.var(bdd::Manager::twin(b))));
  return f;
}

}  // namespace

std::vector<int> Product::all_bits(bool primed) const {
  std::vector<int> bits;
  for (const auto& cv : vars)
    for (int b : cv.bits) bits.push_back(primed ? bdd::Manager::twin(b) : b);
  std::sort(bits.begin(), bits.end());
  return bits;
}

std::vector<std::pair<int, int>> Product::prime_map() const {
  std::vector<std::pair<int, int>> map;
  for (int b : all_bits(false)) map.emplace_back(b, bdd::Manager::twin(b));
  return map;
}

Arena Product::arena() const {
  return Arena{p->mgr, all_bits(false), t_out, p->mgr->zero(), domain};
}

bdd::Ref Product::value_cube(const CompiledVar& v, long value,
                             bool primed) const {
  return val_cube(*p->mgr, v, value, primed);
}

bdd::Ref Product::state_cube(const Valuation& s, bool primed) const {
  Ref r = p->mgr->one();
  for (const CompiledVar& v : vars) {
    auto it = s.find(v.info.name);
    if (it == s.end())
      throw UsageError("valuation misses variable '" + v.info.name + "'");
    if (!v.info.in_domain(it->second))
      throw UsageError("value " + std::to_string(it->second) +
                       " outside the domain of '" + v.info.name + "'");
    r = p->mgr->conj(r, value_cube(v, it->second, primed));
  }
  return r;
}

Valuation Product::decode(const std::vector<bool>& assignment,
                          bool primed) const {
  Valuation out;
  for (const CompiledVar& v : vars) {
    long offset = 0;
    for (int b : v.bits) {
      int idx = primed ? bdd::Manager::twin(b) : b;
      offset = (offset << 1) | (assignment[static_cast<std::size_t>(idx)] ? 1 : 0);
    }
    out[v.info.name] = v.info.lo + offset;
  }
  return out;
}

Product product(const SymbolicInterface& p, const SymbolicInterface& q) {
  if (p.mgr != q.mgr)
    throw UsageError("product needs both interfaces compiled in one manager");
  bdd::Manager& m = *p.mgr;

  std::vector<std::string> clashes;
  for (const CompiledVar& vq : q.vars) {
    const VarInfo* vp = p.src->find_var(vq.info.name);
    if (vp && !(vp->is_global && vq.info.is_global))
      clashes.push_back(vq.info.name);
  }
  if (!clashes.empty()) {
    std::string msg = "cannot compose '" + p.src->name + "' with '" +
                      q.src->name + "': name clash on";
    for (const auto& n : clashes) msg += " '" + n + "'";
    throw ComposeError(msg);
  }

  Product prod;
  prod.p = &p;
  prod.q = &q;
  prod.vars = p.vars;
  for (const CompiledVar& vq : q.vars) {
    if (vq.info.is_global && p.src->find_var(vq.info.name)) {
      if (p.cvar(vq.info.name).bits != vq.bits)
        throw UsageError("global '" + vq.info.name +
                         "' was compiled through different tables");
      continue;
    }
    prod.vars.push_back(vq);
  }

  prod.domain = m.conj(p.domain, q.domain);
  prod.domain_primed = m.conj(p.domain_primed, q.domain_primed);
  prod.init = m.conj(p.init, q.init);
  prod.err = m.zero();
  prod.t_out = m.zero();
  Ref dom2 = m.conj(prod.domain, prod.domain_primed);

  auto side = [&](const SymbolicInterface& e, const SymbolicInterface& l) {
    // Globals only the listener tracks keep their value: nobody writes
    // them during this emission.
    std::vector<int> l_only;
    for (const CompiledVar& v : l.vars) {
      if (!v.info.is_global || e.src->find_var(v.info.name)) continue;
      for (int b : v.bits) l_only.push_back(b);
    }
    Ref keep_l_globals = frame_bits(m, l_only);
    Ref keep_l_locals = frame_bits(m, l.local_bits(false));
    const ActionSpec* la = nullptr;
    for (const auto& [a, rho] : e.rho_out) {
      la = l.src->find_action(a);
      bool listens = la && la->in_input();
      Ref base = m.conj(rho, keep_l_globals);
      Ref move, rej = m.zero();
      if (listens) {
        move = m.conj(base, l.in_rel(a));
        Ref can = m.exists(l.local_bits(true), l.in_rel(a));
        Ref refused = m.conj(base, m.negate(can));
        rej = m.conj(m.exists(prod.all_bits(true), refused), prod.domain);
      } else {
        move = m.conj(base, keep_l_locals);
      }
      move = m.conj(move, dom2);
      prod.moves.push_back({e.src->name, a, move});
      prod.t_out = m.disj(prod.t_out, move);
      if (!m.is_false(rej)) prod.rejections.push_back({e.src->name, a, rej});
      prod.err = m.disj(prod.err, rej);
    }
  };
  side(p, q);
  side(q, p);
  return prod;
}

Compatibility compatible_states(const Product& prod) {
  bdd::Manager& m = *prod.p->mgr;
  Fix attr = attr_output(prod.arena(), prod.err);
  return {m.conj(m.negate(attr.set), prod.domain), attr};
}

namespace {

struct Column {
  const CompiledVar* var;
  bool primed;
};

bool is_true_lit(const ExprPtr& e) {
  return e->kind == Expr::Kind::BoolLit && e->bvalue;
}

// Constraint selecting `values` out of the variable's domain, phrased
// as compactly as the grammar allows; null when every value is in.
ExprPtr value_group_expr(const CompiledVar& v, bool primed,
                         const std::vector<long>& values) {
  if (static_cast<long>(values.size()) == v.info.card()) return nullptr;
  auto mkvar = [&] { return make_var(v.info.name, primed); };
  if (v.info.is_bool)
    return make_binary(Expr::BinOp::Eq, mkvar(), make_bool(values[0] != 0));
  if (values.size() == 1)
    return make_binary(Expr::BinOp::Eq, mkvar(), make_int(values[0]));
  if (values.back() - values.front() + 1 == static_cast<long>(values.size())) {
    if (values.front() == v.info.lo)
      return make_binary(Expr::BinOp::Le, mkvar(), make_int(values.back()));
    if (values.back() == v.info.hi)
      return make_binary(Expr::BinOp::Ge, mkvar(), make_int(values.front()));
    return make_binary(
        Expr::BinOp::And,
        make_binary(Expr::BinOp::Ge, mkvar(), make_int(values.front())),
        make_binary(Expr::BinOp::Le, mkvar(), make_int(values.back())));
  }
  ExprPtr e;
  for (long c : values) {
    ExprPtr eq = make_binary(Expr::BinOp::Eq, mkvar(), make_int(c));
    e = e ? make_binary(Expr::BinOp::Or, std::move(e), std::move(eq)) : eq;
  }
  return e;
}

// Multi-valued Shannon expansion with cofactor grouping: values of one
// column that leave the same residual constraint share a disjunct. The
// set's support must lie within the columns' bits.
ExprPtr set_to_expr(bdd::Manager& m, Ref set, const std::vector<Column>& cols,
                    std::size_t k) {
  if (m.is_false(set)) return make_bool(false);
  if (m.is_true(set)) return make_bool(true);
  if (k == cols.size())
    throw Error("internal: residual constraint outside the emitted columns");

  const CompiledVar& v = *cols[k].var;
  bool primed = cols[k].primed;
  std::vector<int> vb;
  for (int b : v.bits) vb.push_back(primed ? bdd::Manager::twin(b) : b);

  std::vector<std::pair<Ref, std::vector<long>>> groups;
  for (long c = v.info.lo; c <= v.info.hi; ++c) {
    Ref cof = m.exists(vb, m.conj(set, val_cube(m, v, c, primed)));
    if (m.is_false(cof)) continue;
    bool found = false;
    for (auto& g : groups)
      if (g.first == cof) {
        g.second.push_back(c);
        found = true;
        break;
      }
    if (!found) groups.push_back({cof, {c}});
  }

  ExprPtr result;
  for (auto& g : groups) {
    ExprPtr rest = set_to_expr(m, g.first, cols, k + 1);
    ExprPtr vexpr = value_group_expr(v, primed, g.second);
    ExprPtr term = !vexpr              ? rest
                   : is_true_lit(rest) ? vexpr
                                       : make_binary(Expr::BinOp::And, vexpr,
                                                     std::move(rest));
    result = result ? make_binary(Expr::BinOp::Or, std::move(result),
                                  std::move(term))
                    : term;
  }
  return result ? result : make_bool(false);
}

// Splits a relation into guarded commands, one per distinct primed
// outcome; assignments a guard already forces are left to the frame.
std::vector<Command> output_commands(const Product& prod, Ref rel) {
  bdd::Manager& m = *prod.p->mgr;
  std::vector<Column> cols;
  for (const auto& cv : prod.vars) cols.push_back({&cv, false});
  std::vector<int> primed = prod.all_bits(true);
  std::vector<Command> cmds;
  Ref rest = rel;
  while (!m.is_false(rest)) {
    auto pick = m.pick_cube(rest);
    Valuation next = prod.decode(*pick, true);
    Ref ncube = prod.state_cube(next, true);
    Ref guard_set = m.exists(primed, m.conj(rest, ncube));
    Command c;
    c.guard = set_to_expr(m, guard_set, cols, 0);
    for (const auto& cv : prod.vars) {
      long val = next.at(cv.info.name);
      if (m.is_false(
              m.conj(guard_set, m.negate(prod.value_cube(cv, val, false)))))
        continue;
      Assign a;
      a.var = cv.info.name;
      a.value = cv.info.is_bool ? make_bool(val != 0) : make_int(val);
      c.assigns.push_back(std::move(a));
    }
    cmds.push_back(std::move(c));
    rest = m.conj(rest, m.negate(m.conj(guard_set, ncube)));
  }
  return cmds;
}

// Same split for an input relation: one command per distinct primed
// local outcome; the guard keeps its primed-global constraints.
std::vector<Command> input_commands(const Product& prod, Ref rel) {
  bdd::Manager& m = *prod.p->mgr;
  std::vector<Column> cols;
  for (const auto& cv : prod.vars) cols.push_back({&cv, false});
  for (const auto& cv : prod.vars)
    if (cv.info.is_global) cols.push_back({&cv, true});
  std::vector<int> lp;
  for (const auto& cv : prod.vars)
    if (!cv.info.is_global)
      for (int b : cv.bits) lp.push_back(bdd::Manager::twin(b));
  std::vector<Command> cmds;
  Ref rest = rel;
  while (!m.is_false(rest)) {
    auto pick = m.pick_cube(rest);
    Valuation next;
    Ref lcube = m.one();
    for (const auto& cv : prod.vars) {
      if (cv.info.is_global) continue;
      long offset = 0;
      for (int b : cv.bits) {
        int idx = bdd::Manager::twin(b);
        offset =
            (offset << 1) | ((*pick)[static_cast<std::size_t>(idx)] ? 1 : 0);
      }
      long val = cv.info.lo + offset;
      next[cv.info.name] = val;
      lcube = m.conj(lcube, prod.value_cube(cv, val, true));
    }
    Ref guard_set = m.exists(lp, m.conj(rest, lcube));
    Command c;
    c.guard = set_to_expr(m, guard_set, cols, 0);
    for (const auto& cv : prod.vars) {
      if (cv.info.is_global) continue;
      long val = next.at(cv.info.name);
      if (m.is_false(
              m.conj(guard_set, m.negate(prod.value_cube(cv, val, false)))))
        continue;
      Assign a;
      a.var = cv.info.name;
      a.value = cv.info.is_bool ? make_bool(val != 0) : make_int(val);
      c.assigns.push_back(std::move(a));
    }
    cmds.push_back(std::move(c));
    rest = m.conj(rest, m.negate(m.conj(guard_set, lcube)));
  }
  return cmds;
}

Command never_fires() { return Command{make_bool(false), {}, {}}; }

}  // namespace

CompositionResult compose(const SymbolicInterface& p,
                          const SymbolicInterface& q,
                          const std::string& name) {
  bdd::Manager& m = *p.mgr;
  Product prod = product(p, q);
  Compatibility compat = compatible_states(prod);

  if (m.is_false(m.conj(prod.init, compat.w))) {
    auto raw = extract_trace(prod.arena(), prod.t_out, prod.init, prod.err);
    std::vector<TraceStep> steps;
    if (raw) {
      steps.push_back({"init", prod.decode(raw->front(), false)});
      for (std::size_t k = 1; k < raw->size(); ++k) {
        Valuation prev = prod.decode((*raw)[k - 1], false);
        Valuation next = prod.decode((*raw)[k], false);
        Ref move = m.conj(prod.state_cube(prev, false),
                          prod.state_cube(next, true));
        std::string label;
        for (const auto& mv : prod.moves)
          if (!m.is_false(m.conj(move, mv.rel))) {
            label = mv.action + "!";
            break;
          }
        if (label.empty())
          throw Error("internal: witness step matches no joint move");
        steps.push_back({std::move(label), std::move(next)});
      }
    }
    std::string bad_action, bad_emitter;
    if (!steps.empty()) {
      Ref last = prod.state_cube(steps.back().state, false);
      for (const auto& r : prod.rejections)
        if (!m.is_false(m.conj(r.states, last))) {
          bad_action = r.action;
          bad_emitter = r.emitter;
          break;
        }
    }
    std::vector<VarInfo> infos;
    infos.reserve(prod.vars.size());
    for (const auto& cv : prod.vars) infos.push_back(cv.info);
    std::string msg =
        steps.empty()
            ? "incompatible: '" + p.src->name + "' and '" + q.src->name +
                  "' have no joint initial state"
            : "incompatible: '" + bad_emitter + "' can emit '" + bad_action +
                  "' with an update the other side refuses";
    throw IncompatibleError(msg, std::move(infos), std::move(steps),
                            bad_action, bad_emitter);
  }

  Ref w2 = m.conj(compat.w, m.rename(compat.w, prod.prime_map()));
  Ref dom2 = m.conj(prod.domain, prod.domain_primed);

  ModuleAST mod;
  mod.name = name.empty() ? p.src->name + "_" + q.src->name : name;
  for (const auto& cv : prod.vars) {
    Decl d;
    d.name = cv.info.name;
    d.is_global = cv.info.is_global;
    d.is_bool = cv.info.is_bool;
    d.lo = cv.info.lo;
    d.hi = cv.info.hi;
    mod.decls.push_back(std::move(d));
  }

  std::vector<std::string> order;
  for (const auto& s : p.src->actions) order.push_back(s.name);
  for (const auto& s : q.src->actions)
    if (!p.src->find_action(s.name)) order.push_back(s.name);

  for (const auto& aname : order) {
    const ActionSpec* ap = p.src->find_action(aname);
    const ActionSpec* aq = q.src->find_action(aname);
    if ((ap && ap->in_output()) || (aq && aq->in_output())) {
      Ref rel = m.zero();
      for (const auto& mv : prod.moves)
        if (mv.action == aname) rel = m.disj(rel, mv.rel);
      rel = m.conj(rel, w2);
      ActionBlock blk;
      blk.action = aname;
      blk.is_output = true;
      blk.commands = output_commands(prod, rel);
      if (blk.commands.empty()) blk.commands.push_back(never_fires());
      mod.actions.push_back(std::move(blk));
    }
    if ((ap && ap->in_input()) || (aq && aq->in_input())) {
      Ref rel = m.conj(ap && ap->in_input()
                           ? p.in_rel(aname)
                           : frame_bits(m, p.local_bits(false)),
                       aq && aq->in_input()
                           ? q.in_rel(aname)
                           : frame_bits(m, q.local_bits(false)));
      rel = m.conj(rel, m.conj(w2, dom2));
      ActionBlock blk;
      blk.action = aname;
      blk.is_output = false;
      blk.commands = input_commands(prod, rel);
      if (blk.commands.empty()) blk.commands.push_back(never_fires());
      mod.actions.push_back(std::move(blk));
    }
  }

  std::vector<Column> ucols;
  for (const auto& cv : prod.vars) ucols.push_back({&cv, false});
  mod.init = set_to_expr(m, m.conj(prod.init, compat.w), ucols, 0);

  Interface composite = validate(mod);
  return {std::move(mod), std::move(composite), prod.err, compat.w,
          compat.attractor};
}

}  // namespace sic
