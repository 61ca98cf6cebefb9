#include "sic/model.hh"

#include <map>
#include <optional>
#include <set>

#include "sic/symbolic.hh"

namespace sic {

int VarInfo::bits() const {
  int n = 0;
  unsigned long span = static_cast<unsigned long>(card() - 1);
  while (span > 0) {
    ++n;
    span >>= 1;
  }
  return n;
}

const VarInfo* Interface::find_var(const std::string& n) const {
  for (const VarInfo& v : vars)
    if (v.name == n) return &v;
  return nullptr;
}

const ActionSpec* Interface::find_action(const std::string& n) const {
  for (const ActionSpec& a : actions)
    if (a.name == n) return &a;
  return nullptr;
}

std::vector<std::string> Interface::output_alphabet() const {
  std::vector<std::string> out;
  for (const ActionSpec& a : actions)
    if (a.in_output()) out.push_back(a.name);
  return out;
}

std::vector<std::string> Interface::input_alphabet() const {
  std::vector<std::string> out;
  for (const ActionSpec& a : actions)
    if (a.in_input()) out.push_back(a.name);
  return out;
}

Ty type_of(const Expr& e, const Interface& i) {
  switch (e.kind) {
    case Expr::Kind::IntLit: return Ty::Int;
    case Expr::Kind::BoolLit: return Ty::Bool;
    case Expr::Kind::Var: {
      const VarInfo* v = i.find_var(e.name);
      if (!v) throw UsageError("type_of: unknown variable " + e.name);
      return v->is_bool ? Ty::Bool : Ty::Int;
    }
    case Expr::Kind::Not: return Ty::Bool;
    case Expr::Kind::Binary:
      switch (e.op) {
        case Expr::BinOp::Add:
        case Expr::BinOp::Sub:
        case Expr::BinOp::Mul: return Ty::Int;
        default: return Ty::Bool;
      }
  }
  return Ty::Bool;
}

namespace {

// Which variable references an expression may contain.
struct RefRules {
  bool unprimed_tracked = true;
  bool primed_global = false;
  const char* where = "";
};

struct Checker {
  const ModuleAST& m;
  std::map<std::string, const Decl*> decls;
  std::vector<Diagnostic> diags;

  void error(const std::string& msg, SourceSpan span) {
    diags.push_back(Diagnostic::error(msg, span));
  }

  std::optional<Ty> decl_type(const Decl& d) {
    return d.is_bool ? Ty::Bool : Ty::Int;
  }

  // Returns the expression's type, or nothing after reporting a problem.
  std::optional<Ty> check(const Expr& e, const RefRules& rules) {
    switch (e.kind) {
      case Expr::Kind::IntLit: return Ty::Int;
      case Expr::Kind::BoolLit: return Ty::Bool;
      case Expr::Kind::Var: {
        auto it = decls.find(e.name);
        if (it == decls.end()) {
          error("unknown variable '" + e.name + "'", e.span);
          return std::nullopt;
        }
        if (e.primed) {
          if (!rules.primed_global) {
            error("primed variable '" + e.name + "'' not allowed in " +
                      rules.where,
                  e.span);
            return std::nullopt;
          }
          if (!it->second->is_global) {
            error("primed reference to local variable '" + e.name + "' in " +
                      rules.where + " (only globals may be read primed)",
                  e.span);
            return std::nullopt;
          }
        } else if (!rules.unprimed_tracked) {
          error("unprimed variable '" + e.name + "' not allowed in " +
                    rules.where,
                e.span);
          return std::nullopt;
        }
        return decl_type(*it->second);
      }
      case Expr::Kind::Not: {
        auto t = check(*e.lhs, rules);
        if (t && *t != Ty::Bool)
          error("'!' needs a boolean operand", e.span);
        return Ty::Bool;
      }
      case Expr::Kind::Binary: {
        auto lt = check(*e.lhs, rules);
        auto rt = check(*e.rhs, rules);
        switch (e.op) {
          case Expr::BinOp::Or:
          case Expr::BinOp::And:
            if ((lt && *lt != Ty::Bool) || (rt && *rt != Ty::Bool))
              error("boolean connective over non-boolean operand", e.span);
            return Ty::Bool;
          case Expr::BinOp::Eq:
          case Expr::BinOp::Ne:
            if (lt && rt && *lt != *rt)
              error("comparison between boolean and integer", e.span);
            return Ty::Bool;
          case Expr::BinOp::Lt:
          case Expr::BinOp::Le:
          case Expr::BinOp::Gt:
          case Expr::BinOp::Ge:
            if ((lt && *lt != Ty::Int) || (rt && *rt != Ty::Int))
              error("ordered comparison needs integer operands", e.span);
            return Ty::Bool;
          case Expr::BinOp::Add:
          case Expr::BinOp::Sub:
          case Expr::BinOp::Mul:
            if ((lt && *lt != Ty::Int) || (rt && *rt != Ty::Int))
              error("arithmetic over non-integer operand", e.span);
            return Ty::Int;
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  void check_bool(const Expr& e, const RefRules& rules) {
    auto t = check(e, rules);
    if (t && *t != Ty::Bool)
      error(std::string(rules.where) + " must be boolean", e.span);
  }

  void check_command(const Command& c, bool is_output) {
    RefRules guard_rules{true, !is_output,
                         is_output ? "an output guard" : "an input guard"};
    check_bool(*c.guard, guard_rules);
    RefRules rhs_rules{true, !is_output, "an assignment right side"};
    std::set<std::string> assigned;
    for (const Assign& a : c.assigns) {
      auto it = decls.find(a.var);
      if (it == decls.end()) {
        error("unknown variable '" + a.var + "'", a.span);
        continue;
      }
      const Decl& d = *it->second;
      if (!is_output && d.is_global) {
        error("input command assigns global variable '" + a.var +
                  "' (inputs may update only locals)",
              a.span);
        continue;
      }
      if (!assigned.insert(a.var).second)
        error("variable '" + a.var + "' assigned twice in one command",
              a.span);
      auto vt = check(*a.value, rhs_rules);
      if (vt && *vt != *decl_type(d))
        error("assignment to '" + a.var + "' has mismatched type", a.span);
      // Constant right sides must land inside the target's domain.
      if (a.value->kind == Expr::Kind::IntLit && !d.is_bool &&
          (a.value->value < d.lo || a.value->value > d.hi))
        error("constant " + std::to_string(a.value->value) +
                  " outside the domain of '" + a.var + "'",
              a.value->span);
    }
  }
};

}  // namespace

Interface validate(const ModuleAST& m) {
  Checker ck{m, {}, {}};

  for (const Decl& d : m.decls) {
    if (!d.is_bool && d.lo > d.hi)
      ck.error("empty domain [" + std::to_string(d.lo) + ".." +
                   std::to_string(d.hi) + "]",
               d.span);
    if (!ck.decls.emplace(d.name, &d).second)
      ck.error("duplicate variable '" + d.name + "'", d.span);
  }

  // Group action blocks by name, rejecting duplicated directions.
  std::vector<ActionSpec> actions;
  auto spec_of = [&](const std::string& name) -> ActionSpec& {
    for (ActionSpec& a : actions)
      if (a.name == name) return a;
    actions.push_back(ActionSpec{name, {}, {}});
    return actions.back();
  };
  // A name may have one output and one input block, not two of a kind.
  std::set<std::pair<std::string, bool>> dirs;
  for (const ActionBlock& b : m.actions) {
    if (!dirs.insert({b.action, b.is_output}).second) {
      ck.error("duplicate " + std::string(b.is_output ? "output" : "input") +
                   " block for action '" + b.action + "'",
               b.span);
      continue;
    }
    ActionSpec& spec = spec_of(b.action);
    auto& side = b.is_output ? spec.out_cmds : spec.in_cmds;
    side.insert(side.end(), b.commands.begin(), b.commands.end());
  }
  // An action must carry at least one command in some direction.
  for (const ActionSpec& spec : actions) {
    if (spec.out_cmds.empty() && spec.in_cmds.empty()) {
      for (const ActionBlock& b : m.actions)
        if (b.action == spec.name) {
          ck.error("action '" + spec.name + "' has no commands", b.span);
          break;
        }
    }
  }

  for (const ActionBlock& b : m.actions)
    for (const Command& c : b.commands) ck.check_command(c, b.is_output);

  ck.check_bool(*m.init, RefRules{true, false, "the initial condition"});

  if (!ck.diags.empty()) throw ValidationError(std::move(ck.diags));

  Interface out;
  out.name = m.name;
  for (const Decl& d : m.decls) {
    VarInfo v;
    v.name = d.name;
    v.is_global = d.is_global;
    v.is_bool = d.is_bool;
    v.lo = d.is_bool ? 0 : d.lo;
    v.hi = d.is_bool ? 1 : d.hi;
    v.span = d.span;
    out.vars.push_back(std::move(v));
  }
  out.actions = std::move(actions);
  out.init = m.init;

  // Satisfiability of init over the declared domains, checked on a
  // scratch manager.
  {
    bdd::Manager scratch;
    VarTable table(scratch);
    SymbolicInterface si = compile(out, table);
    if (scratch.is_false(si.init))
      throw ValidationError({Diagnostic::error(
          "initial condition is unsatisfiable over the declared domains",
          m.init->span)});
  }
  return out;
}

}  // namespace sic
