#include "sic/explicit.hh"

#include <algorithm>

namespace sic {

long EvalEnv::lookup(const std::string& name, bool primed) const {
  std::size_t gi = 0;
  for (std::size_t k = 0; k < src->vars.size(); ++k) {
    const VarInfo& v = src->vars[k];
    if (v.name == name) {
      if (!primed) return current[k];
      if (v.is_global && gi < next_globals.size()) return next_globals[gi];
      throw UsageError("no next value bound for '" + name + "'");
    }
    if (v.is_global) ++gi;
  }
  throw UsageError("unknown variable '" + name + "'");
}

long eval_int(const Expr& e, const EvalEnv& env) {
  switch (e.kind) {
    case Expr::Kind::IntLit: return e.value;
    case Expr::Kind::Var: return env.lookup(e.name, e.primed);
    case Expr::Kind::Binary:
      switch (e.op) {
        case Expr::BinOp::Add: return eval_int(*e.lhs, env) + eval_int(*e.rhs, env);
        case Expr::BinOp::Sub: return eval_int(*e.lhs, env) - eval_int(*e.rhs, env);
        case Expr::BinOp::Mul: return eval_int(*e.lhs, env) * eval_int(*e.rhs, env);
        default: break;
      }
      [[fallthrough]];
    default:
      throw UsageError("boolean expression in integer position");
  }
}

bool eval_bool(const Expr& e, const EvalEnv& env) {
  switch (e.kind) {
    case Expr::Kind::BoolLit: return e.bvalue;
    case Expr::Kind::Var: return env.lookup(e.name, e.primed) != 0;
    case Expr::Kind::Not: return !eval_bool(*e.lhs, env);
    case Expr::Kind::Binary:
      switch (e.op) {
        case Expr::BinOp::Or: return eval_bool(*e.lhs, env) || eval_bool(*e.rhs, env);
        case Expr::BinOp::And: return eval_bool(*e.lhs, env) && eval_bool(*e.rhs, env);
        case Expr::BinOp::Eq:
        case Expr::BinOp::Ne: {
          bool eq;
          if (type_of(*e.lhs, *env.src) == Ty::Bool)
            eq = eval_bool(*e.lhs, env) == eval_bool(*e.rhs, env);
          else
            eq = eval_int(*e.lhs, env) == eval_int(*e.rhs, env);
          return e.op == Expr::BinOp::Eq ? eq : !eq;
        }
        case Expr::BinOp::Lt: return eval_int(*e.lhs, env) < eval_int(*e.rhs, env);
        case Expr::BinOp::Le: return eval_int(*e.lhs, env) <= eval_int(*e.rhs, env);
        case Expr::BinOp::Gt: return eval_int(*e.lhs, env) > eval_int(*e.rhs, env);
        case Expr::BinOp::Ge: return eval_int(*e.lhs, env) >= eval_int(*e.rhs, env);
        default: break;
      }
      [[fallthrough]];
    default:
      throw UsageError("integer expression in boolean position");
  }
}

std::uint64_t ExplicitGraph::index_of(const std::vector<long>& values) const {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < src->vars.size(); ++k) {
    const VarInfo& v = src->vars[k];
    idx = idx * static_cast<std::uint64_t>(v.card()) +
          static_cast<std::uint64_t>(values[k] - v.lo);
  }
  return idx;
}

std::vector<long> ExplicitGraph::values_of(std::uint64_t index) const {
  std::vector<long> values(src->vars.size());
  for (std::size_t k = src->vars.size(); k-- > 0;) {
    const VarInfo& v = src->vars[k];
    std::uint64_t card = static_cast<std::uint64_t>(v.card());
    values[k] = v.lo + static_cast<long>(index % card);
    index /= card;
  }
  return values;
}

std::uint64_t ExplicitGraph::global_index_of(
    const std::vector<long>& globals) const {
  std::uint64_t idx = 0;
  std::size_t gi = 0;
  for (const VarInfo& v : src->vars) {
    if (!v.is_global) continue;
    idx = idx * static_cast<std::uint64_t>(v.card()) +
          static_cast<std::uint64_t>(globals[gi++] - v.lo);
  }
  return idx;
}

std::vector<long> ExplicitGraph::global_values_of(std::uint64_t index) const {
  std::vector<const VarInfo*> globals;
  for (const VarInfo& v : src->vars)
    if (v.is_global) globals.push_back(&v);
  std::vector<long> values(globals.size());
  for (std::size_t k = globals.size(); k-- > 0;) {
    std::uint64_t card = static_cast<std::uint64_t>(globals[k]->card());
    values[k] = globals[k]->lo + static_cast<long>(index % card);
    index /= card;
  }
  return values;
}

namespace {

// Applies one command's assignments on top of `current`; next globals
// (for input commands) are fixed by the emitter and already placed in
// the result. Returns false when some assigned value leaves its domain,
// which disables the command for this source state.
bool apply_assigns(const Interface& i, const EvalEnv& env, const Command& c,
                   std::vector<long>& result) {
  for (const Assign& a : c.assigns) {
    for (std::size_t k = 0; k < i.vars.size(); ++k) {
      if (i.vars[k].name != a.var) continue;
      long v = i.vars[k].is_bool ? (eval_bool(*a.value, env) ? 1 : 0)
                                 : eval_int(*a.value, env);
      if (!i.vars[k].in_domain(v)) return false;
      result[k] = v;
      break;
    }
  }
  return true;
}

}  // namespace

ExplicitGraph enumerate_explicit(const Interface& i, std::uint64_t cap) {
  ExplicitGraph g;
  g.src = &i;
  g.state_count = 1;
  g.global_count = 1;
  for (const VarInfo& v : i.vars) {
    std::uint64_t card = static_cast<std::uint64_t>(v.card());
    if (g.state_count > cap / card)
      throw UsageError("state space of '" + i.name + "' exceeds the bound of " +
                       std::to_string(cap) + " states");
    g.state_count *= card;
    if (v.is_global) g.global_count *= card;
  }

  std::vector<std::size_t> global_slots;  // positions of globals in decls
  for (std::size_t k = 0; k < i.vars.size(); ++k)
    if (i.vars[k].is_global) global_slots.push_back(k);

  for (std::uint64_t s = 0; s < g.state_count; ++s) {
    EvalEnv env{&i, g.values_of(s), {}};
    if (eval_bool(*i.init, env)) g.init_states.push_back(s);
  }

  for (const ActionSpec& spec : i.actions) {
    ExplicitGraph::ActionEdges edges;
    edges.action = spec.name;
    edges.has_out = spec.in_output();
    edges.has_in = spec.in_input();

    if (edges.has_out) {
      edges.out_edges.resize(g.state_count);
      for (std::uint64_t s = 0; s < g.state_count; ++s) {
        EvalEnv env{&i, g.values_of(s), {}};
        auto& succs = edges.out_edges[s];
        for (const Command& c : spec.out_cmds) {
          if (!eval_bool(*c.guard, env)) continue;
          std::vector<long> next = env.current;  // frame: copy everything
          if (!apply_assigns(i, env, c, next)) continue;
          succs.push_back(g.index_of(next));
        }
        std::sort(succs.begin(), succs.end());
        succs.erase(std::unique(succs.begin(), succs.end()), succs.end());
      }
    }

    if (edges.has_in) {
      edges.in_resp.resize(g.state_count);
      for (std::uint64_t s = 0; s < g.state_count; ++s) {
        edges.in_resp[s].resize(g.global_count);
        std::vector<long> current = g.values_of(s);
        for (std::uint64_t gu = 0; gu < g.global_count; ++gu) {
          EvalEnv env{&i, current, g.global_values_of(gu)};
          auto& succs = edges.in_resp[s][gu];
          for (const Command& c : spec.in_cmds) {
            if (!eval_bool(*c.guard, env)) continue;
            // Locals framed; globals take the emitter's update.
            std::vector<long> next = current;
            for (std::size_t gi = 0; gi < global_slots.size(); ++gi)
              next[global_slots[gi]] = env.next_globals[gi];
            if (!apply_assigns(i, env, c, next)) continue;
            succs.push_back(g.index_of(next));
          }
          std::sort(succs.begin(), succs.end());
          succs.erase(std::unique(succs.begin(), succs.end()), succs.end());
        }
      }
    }

    g.actions.push_back(std::move(edges));
  }
  return g;
}

}  // namespace sic
