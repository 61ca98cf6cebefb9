#include "sic/symbolic.hh"

#include <algorithm>

namespace sic {

namespace {

using bdd::Manager;
using bdd::Op;
using bdd::Ref;

// An integer expression as a finite value map: (value, condition) pairs
// with pairwise-disjoint conditions, sorted by value.
using ValueMap = std::vector<std::pair<long, Ref>>;

int bit_index(const CompiledVar& v, int k, bool primed) {
  int b = v.bits[static_cast<std::size_t>(k)];
  return primed ? Manager::twin(b) : b;
}

// value-of(bits) <= max, MSB-first comparator circuit.
Ref le_const(Manager& m, const CompiledVar& v, unsigned long max,
             bool primed) {
  int n = static_cast<int>(v.bits.size());
  Ref res = m.zero();
  Ref eq = m.one();
  for (int k = 0; k < n; ++k) {
    Ref bk = m.var(bit_index(v, k, primed));
    if ((max >> (n - 1 - k)) & 1ul) {
      res = m.disj(res, m.conj(eq, m.negate(bk)));
      eq = m.conj(eq, bk);
    } else {
      eq = m.conj(eq, m.negate(bk));
    }
  }
  return m.disj(res, eq);
}

Ref domain_of(Manager& m, const CompiledVar& v, bool primed) {
  unsigned long card = static_cast<unsigned long>(v.info.card());
  if (v.bits.empty() || card == (1ul << v.bits.size())) return m.one();
  return le_const(m, v, card - 1, primed);
}

// next-value == current-value, bit by bit.
Ref frame_of(Manager& m, const CompiledVar& v) {
  Ref r = m.one();
  for (int b : v.bits) r = m.conj(r, m.equiv(m.var(b), m.var(Manager::twin(b))));
  return r;
}

ValueMap var_values(const SymbolicInterface& si, const CompiledVar& v,
                    bool primed) {
  ValueMap out;
  for (long value = v.info.lo; value <= v.info.hi; ++value)
    out.emplace_back(value, si.value_cube(v, value, primed));
  return out;
}

ValueMap combine(Manager& m, const ValueMap& a, const ValueMap& b,
                 long (*f)(long, long)) {
  std::map<long, Ref> acc;
  for (const auto& [va, ca] : a) {
    for (const auto& [vb, cb] : b) {
      Ref c = m.conj(ca, cb);
      if (m.is_false(c)) continue;
      long v = f(va, vb);
      auto [it, fresh] = acc.emplace(v, c);
      if (!fresh) it->second = m.disj(it->second, c);
    }
  }
  return ValueMap(acc.begin(), acc.end());
}

ValueMap compile_int(const Expr& e, const SymbolicInterface& si);

// ordered comparison a OP b over sorted value maps, via a running
// prefix disjunction of a's conditions.
Ref compare_maps(Manager& m, const ValueMap& a, const ValueMap& b,
                 Expr::BinOp op) {
  if (op == Expr::BinOp::Gt)
    return compare_maps(m, b, a, Expr::BinOp::Lt);
  if (op == Expr::BinOp::Ge)
    return compare_maps(m, b, a, Expr::BinOp::Le);
  Ref res = m.zero();
  if (op == Expr::BinOp::Eq || op == Expr::BinOp::Ne) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first) ++i;
      else if (a[i].first > b[j].first) ++j;
      else res = m.disj(res, m.conj(a[i++].second, b[j++].second));
    }
    return op == Expr::BinOp::Eq ? res : m.negate(res);
  }
  // Lt / Le
  Ref below = m.zero();
  std::size_t i = 0;
  for (const auto& [vb, cb] : b) {
    while (i < a.size() && (a[i].first < vb ||
                            (op == Expr::BinOp::Le && a[i].first == vb)))
      below = m.disj(below, a[i++].second);
    res = m.disj(res, m.conj(below, cb));
  }
  return res;
}

Ref compile_bool_rec(const Expr& e, const SymbolicInterface& si) {
  Manager& m = *si.mgr;
  switch (e.kind) {
    case Expr::Kind::BoolLit: return e.bvalue ? m.one() : m.zero();
    case Expr::Kind::Var: {
      const CompiledVar& v = si.cvar(e.name);
      return m.var(bit_index(v, 0, e.primed));  // booleans use one bit
    }
    case Expr::Kind::Not: return m.negate(compile_bool_rec(*e.lhs, si));
    case Expr::Kind::Binary: {
      switch (e.op) {
        case Expr::BinOp::Or:
        case Expr::BinOp::And:
          return m.apply(e.op == Expr::BinOp::Or ? Op::Or : Op::And,
                         compile_bool_rec(*e.lhs, si),
                         compile_bool_rec(*e.rhs, si));
        case Expr::BinOp::Eq:
        case Expr::BinOp::Ne: {
          if (type_of(*e.lhs, *si.src) == Ty::Bool) {
            Ref l = compile_bool_rec(*e.lhs, si);
            Ref r = compile_bool_rec(*e.rhs, si);
            return e.op == Expr::BinOp::Eq ? m.equiv(l, r)
                                           : m.apply(Op::Xor, l, r);
          }
          [[fallthrough]];
        }
        default:
          return compare_maps(m, compile_int(*e.lhs, si),
                              compile_int(*e.rhs, si), e.op);
      }
    }
    default:
      throw UsageError("integer expression in boolean position");
  }
}

ValueMap compile_int(const Expr& e, const SymbolicInterface& si) {
  Manager& m = *si.mgr;
  switch (e.kind) {
    case Expr::Kind::IntLit: return {{e.value, m.one()}};
    case Expr::Kind::Var:
      return var_values(si, si.cvar(e.name), e.primed);
    case Expr::Kind::Binary:
      switch (e.op) {
        case Expr::BinOp::Add:
          return combine(m, compile_int(*e.lhs, si), compile_int(*e.rhs, si),
                         [](long a, long b) { return a + b; });
        case Expr::BinOp::Sub:
          return combine(m, compile_int(*e.lhs, si), compile_int(*e.rhs, si),
                         [](long a, long b) { return a - b; });
        case Expr::BinOp::Mul:
          return combine(m, compile_int(*e.lhs, si), compile_int(*e.rhs, si),
                         [](long a, long b) { return a * b; });
        default: break;
      }
      [[fallthrough]];
    default:
      throw UsageError("boolean expression in integer position");
  }
}

// guard ∧ assignments ∧ frame for one command. Output commands frame
// every unassigned tracked variable; input commands frame unassigned
// locals and leave globals to the emitter.
Ref compile_command(const SymbolicInterface& si, const Command& c,
                    bool is_input) {
  Manager& m = *si.mgr;
  Ref r = compile_bool_rec(*c.guard, si);
  std::vector<bool> assigned(si.vars.size(), false);
  for (const Assign& a : c.assigns) {
    const CompiledVar* target = nullptr;
    for (std::size_t k = 0; k < si.vars.size(); ++k) {
      if (si.vars[k].info.name == a.var) {
        target = &si.vars[k];
        assigned[k] = true;
        break;
      }
    }
    if (!target) throw UsageError("unvalidated assignment target '" + a.var + "'");
    ValueMap rhs;
    if (target->info.is_bool) {
      Ref val = compile_bool_rec(*a.value, si);
      Ref bit = m.var(bit_index(*target, 0, true));
      r = m.conj(r, m.equiv(bit, val));
      continue;
    }
    rhs = compile_int(*a.value, si);
    Ref rel = m.zero();
    for (const auto& [v, cond] : rhs) {
      if (!target->info.in_domain(v)) continue;  // disables those sources
      rel = m.disj(rel, m.conj(cond, si.value_cube(*target, v, true)));
    }
    r = m.conj(r, rel);
  }
  for (std::size_t k = 0; k < si.vars.size(); ++k) {
    if (assigned[k]) continue;
    if (is_input && si.vars[k].info.is_global) continue;
    r = m.conj(r, frame_of(m, si.vars[k]));
  }
  return r;
}

}  // namespace

std::vector<CompiledVar> VarTable::instance(const Interface& i,
                                            const std::string& tag) {
  std::vector<CompiledVar> out;
  for (const VarInfo& v : i.vars) {
    if (v.is_global) {
      auto it = globals_.find(v.name);
      if (it != globals_.end()) {
        const VarInfo& prev = it->second.info;
        if (prev.is_bool != v.is_bool || prev.lo != v.lo || prev.hi != v.hi)
          throw ValidationError({Diagnostic::error(
              "global variable '" + v.name +
                  "' declared with conflicting domains",
              v.span)});
        out.push_back(it->second);
        continue;
      }
    }
    CompiledVar cv;
    cv.info = v;
    std::string key = v.is_global || tag.empty() ? v.name : tag + "." + v.name;
    for (int k = 0; k < v.bits(); ++k)
      cv.bits.push_back(mgr_->add_bit_pair(key, k));
    if (v.is_global) globals_.emplace(v.name, cv);
    out.push_back(std::move(cv));
  }
  return out;
}

const CompiledVar& SymbolicInterface::cvar(const std::string& name) const {
  for (const CompiledVar& v : vars)
    if (v.info.name == name) return v;
  throw UsageError("unknown variable '" + name + "'");
}

bdd::Ref SymbolicInterface::out_rel(const std::string& action) const {
  auto it = rho_out.find(action);
  return it == rho_out.end() ? mgr->zero() : it->second;
}

bdd::Ref SymbolicInterface::in_rel(const std::string& action) const {
  auto it = rho_in.find(action);
  return it == rho_in.end() ? mgr->zero() : it->second;
}

std::vector<int> SymbolicInterface::all_bits(bool primed) const {
  std::vector<int> out;
  for (const CompiledVar& v : vars)
    for (int b : v.bits) out.push_back(primed ? bdd::Manager::twin(b) : b);
  return out;
}

std::vector<int> SymbolicInterface::local_bits(bool primed) const {
  std::vector<int> out;
  for (const CompiledVar& v : vars) {
    if (v.info.is_global) continue;
    for (int b : v.bits) out.push_back(primed ? bdd::Manager::twin(b) : b);
  }
  return out;
}

std::vector<int> SymbolicInterface::global_bits(bool primed) const {
  std::vector<int> out;
  for (const CompiledVar& v : vars) {
    if (!v.info.is_global) continue;
    for (int b : v.bits) out.push_back(primed ? bdd::Manager::twin(b) : b);
  }
  return out;
}

std::vector<std::pair<int, int>> SymbolicInterface::prime_map() const {
  std::vector<std::pair<int, int>> out;
  for (const CompiledVar& v : vars)
    for (int b : v.bits) out.emplace_back(b, bdd::Manager::twin(b));
  return out;
}

bdd::Ref SymbolicInterface::value_cube(const CompiledVar& v, long value,
                                       bool primed) const {
  if (!v.info.in_domain(value)) return mgr->zero();
  unsigned long offset = static_cast<unsigned long>(value - v.info.lo);
  Ref r = mgr->one();
  int n = static_cast<int>(v.bits.size());
  for (int k = 0; k < n; ++k) {
    Ref bit = mgr->var(bit_index(v, k, primed));
    bool set = (offset >> (n - 1 - k)) & 1ul;
    r = mgr->conj(r, set ? bit : mgr->negate(bit));
  }
  return r;
}

bdd::Ref SymbolicInterface::state_cube(const Valuation& s, bool primed) const {
  Ref r = mgr->one();
  for (const CompiledVar& v : vars) {
    auto it = s.find(v.info.name);
    if (it == s.end())
      throw UsageError("valuation misses variable '" + v.info.name + "'");
    if (!v.info.in_domain(it->second))
      throw UsageError("value " + std::to_string(it->second) +
                       " outside the domain of '" + v.info.name + "'");
    r = mgr->conj(r, value_cube(v, it->second, primed));
  }
  return r;
}

Valuation SymbolicInterface::decode(const std::vector<bool>& assignment,
                                    bool primed) const {
  Valuation out;
  for (const CompiledVar& v : vars) {
    long offset = 0;
    for (std::size_t k = 0; k < v.bits.size(); ++k) {
      int b = bit_index(v, static_cast<int>(k), primed);
      offset = (offset << 1) | (assignment[static_cast<std::size_t>(b)] ? 1 : 0);
    }
    out[v.info.name] = v.info.lo + offset;
  }
  return out;
}

SymbolicInterface compile(const Interface& i, VarTable& table,
                          const std::string& tag) {
  SymbolicInterface si;
  si.src = &i;
  si.mgr = &table.manager();
  si.tag = tag;
  si.vars = table.instance(i, tag);
  Manager& m = *si.mgr;

  si.domain = m.one();
  si.domain_primed = m.one();
  for (const CompiledVar& v : si.vars) {
    si.domain = m.conj(si.domain, domain_of(m, v, false));
    si.domain_primed = m.conj(si.domain_primed, domain_of(m, v, true));
  }
  si.init = m.conj(compile_bool_rec(*i.init, si), si.domain);

  Ref both = m.conj(si.domain, si.domain_primed);
  for (const ActionSpec& a : i.actions) {
    if (a.in_output()) {
      Ref sum = m.zero();
      for (const Command& c : a.out_cmds)
        sum = m.disj(sum, compile_command(si, c, false));
      si.rho_out[a.name] = m.conj(sum, both);
    }
    if (a.in_input()) {
      Ref sum = m.zero();
      for (const Command& c : a.in_cmds)
        sum = m.disj(sum, compile_command(si, c, true));
      si.rho_in[a.name] = m.conj(sum, both);
    }
  }
  return si;
}

bdd::Ref compile_bool(const Expr& e, const SymbolicInterface& si) {
  return compile_bool_rec(e, si);
}

std::vector<std::pair<std::string, Valuation>> out_moves(
    const SymbolicInterface& si, const Valuation& s) {
  Manager& m = *si.mgr;
  Ref here = si.state_cube(s, false);
  std::vector<std::pair<std::string, Valuation>> out;
  for (const ActionSpec& a : si.src->actions) {
    if (!a.in_output()) continue;
    Ref x = m.conj(si.out_rel(a.name), here);
    while (!m.is_false(x)) {
      auto cube = m.pick_cube(x);
      Valuation succ = si.decode(*cube, true);
      out.emplace_back(a.name, succ);
      x = m.conj(x, m.negate(si.state_cube(succ, true)));
    }
  }
  return out;
}

InAcceptance in_accepts(const SymbolicInterface& si, const Valuation& s,
                        const std::string& action,
                        const Valuation& global_update) {
  Manager& m = *si.mgr;
  const ActionSpec* spec = si.src->find_action(action);
  if (!spec || !spec->in_input()) return InAcceptance{false, {}};

  Ref x = m.conj(si.in_rel(action), si.state_cube(s, false));
  for (const CompiledVar& v : si.vars) {
    if (!v.info.is_global) continue;
    auto it = global_update.find(v.info.name);
    if (it == global_update.end())
      throw UsageError("global update misses variable '" + v.info.name + "'");
    if (!v.info.in_domain(it->second))
      throw UsageError("value " + std::to_string(it->second) +
                       " outside the domain of '" + v.info.name + "'");
    x = m.conj(x, si.value_cube(v, it->second, true));
  }

  InAcceptance acc{true, {}};
  while (!m.is_false(x)) {
    auto cube = m.pick_cube(x);
    Valuation full = si.decode(*cube, true);
    Valuation locals;
    Ref local_cube = m.one();
    for (const CompiledVar& v : si.vars) {
      if (v.info.is_global) continue;
      locals[v.info.name] = full[v.info.name];
      local_cube = m.conj(local_cube, si.value_cube(v, full[v.info.name], true));
    }
    acc.responses.push_back(std::move(locals));
    x = m.conj(x, m.negate(local_cube));
  }
  return acc;
}

}  // namespace sic
