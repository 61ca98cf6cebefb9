#include "sic/safety.hh"

#include "sic/diag.hh"

namespace sic {

namespace {

// Invariants read unprimed tracked variables only; everything else in
// the expression grammar is fair game. Mirrors the validator's wording.
Ty infer(const Expr& e, const Interface& i, std::vector<Diagnostic>& out) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      return Ty::Int;
    case Expr::Kind::BoolLit:
      return Ty::Bool;
    case Expr::Kind::Var: {
      const VarInfo* v = i.find_var(e.name);
      if (!v) {
        out.push_back(Diagnostic::error(
            "unknown variable '" + e.name + "' in the invariant", e.span));
        return Ty::Bool;
      }
      if (e.primed)
        out.push_back(Diagnostic::error("primed variable '" + e.name +
                                            "'' not allowed in the invariant",
                                        e.span));
      return v->is_bool ? Ty::Bool : Ty::Int;
    }
    case Expr::Kind::Not:
      if (infer(*e.lhs, i, out) != Ty::Bool)
        out.push_back(Diagnostic::error("'!' needs a boolean operand", e.span));
      return Ty::Bool;
    case Expr::Kind::Binary: {
      Ty l = infer(*e.lhs, i, out);
      Ty r = infer(*e.rhs, i, out);
      switch (e.op) {
        case Expr::BinOp::Or:
        case Expr::BinOp::And:
          if (l != Ty::Bool || r != Ty::Bool)
            out.push_back(Diagnostic::error(
                "boolean connective over non-boolean operand", e.span));
          return Ty::Bool;
        case Expr::BinOp::Eq:
        case Expr::BinOp::Ne:
          if (l != r)
            out.push_back(Diagnostic::error(
                "comparison between boolean and integer", e.span));
          return Ty::Bool;
        case Expr::BinOp::Lt:
        case Expr::BinOp::Le:
        case Expr::BinOp::Gt:
        case Expr::BinOp::Ge:
          if (l != Ty::Int || r != Ty::Int)
            out.push_back(Diagnostic::error(
                "ordered comparison needs integer operands", e.span));
          return Ty::Bool;
        default:  // Add, Sub, Mul
          if (l != Ty::Int || r != Ty::Int)
            out.push_back(Diagnostic::error(
                "arithmetic over non-integer operand", e.span));
          return Ty::Int;
      }
    }
  }
  return Ty::Bool;
}

bdd::Ref closure(const SymbolicInterface& si,
                 const std::map<std::string, bdd::Ref>& rhos) {
  bdd::Ref t = si.mgr->zero();
  for (const auto& [name, rel] : rhos) t = si.mgr->disj(t, rel);
  return t;
}

Arena arena_of(const SymbolicInterface& si) {
  return Arena{si.mgr, si.all_bits(false), closure(si, si.rho_out),
               closure(si, si.rho_in), si.domain};
}

// Names each step of a raw kernel trace after the first action whose
// relation admits it, outputs before inputs, declaration order.
std::vector<TraceStep> annotate(const SymbolicInterface& si,
                                const std::vector<std::vector<bool>>& raw) {
  bdd::Manager& m = *si.mgr;
  std::vector<TraceStep> out;
  out.push_back({"init", si.decode(raw.front(), false)});
  for (std::size_t k = 1; k < raw.size(); ++k) {
    Valuation prev = si.decode(raw[k - 1], false);
    Valuation next = si.decode(raw[k], false);
    bdd::Ref move =
        m.conj(si.state_cube(prev, false), si.state_cube(next, true));
    std::string label;
    for (const auto& spec : si.src->actions) {
      if (spec.in_output() &&
          !m.is_false(m.conj(move, si.out_rel(spec.name)))) {
        label = spec.name + "!";
        break;
      }
      if (spec.in_input() && !m.is_false(m.conj(move, si.in_rel(spec.name)))) {
        label = spec.name + "?";
        break;
      }
    }
    if (label.empty()) throw Error("internal: trace step matches no action");
    out.push_back({std::move(label), std::move(next)});
  }
  return out;
}

}  // namespace

bdd::Ref compile_invariant(const Expr& phi, const SymbolicInterface& si) {
  std::vector<Diagnostic> diags;
  Ty t = infer(phi, *si.src, diags);
  if (diags.empty() && t != Ty::Bool)
    diags.push_back(
        Diagnostic::error("the invariant must be boolean", phi.span));
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return compile_bool(phi, si);
}

PessimisticResult check_pessimistic(const SymbolicInterface& si,
                                    const Expr& phi) {
  bdd::Manager& m = *si.mgr;
  bdd::Ref good = compile_invariant(phi, si);
  Arena a = arena_of(si);
  bdd::Ref t_all = m.disj(a.t_out, a.t_in);
  bdd::Ref bad = m.conj(m.negate(good), si.domain);

  Fix reach = reachable(a, t_all, si.init);
  PessimisticResult res;
  res.iterations = reach.iterations;
  res.safe = m.is_false(m.conj(reach.set, bad));
  if (res.safe) return res;

  auto raw = extract_trace(a, t_all, si.init, bad);
  res.trace = annotate(si, *raw);
  return res;
}

OptimisticResult check_optimistic(const SymbolicInterface& si,
                                  const Expr& phi) {
  bdd::Manager& m = *si.mgr;
  bdd::Ref good = compile_invariant(phi, si);
  Arena a = arena_of(si);
  Fix win = win_safe(a, m.conj(good, si.domain));
  OptimisticResult res;
  res.iterations = win.iterations;
  res.winning = m.conj(win.set, si.domain);
  res.safe = m.is_false(m.conj(si.init, m.negate(res.winning)));
  return res;
}

std::vector<Diagnostic> well_formed(const SymbolicInterface& si) {
  bdd::Manager& m = *si.mgr;
  std::vector<int> over = si.all_bits(false);
  for (int b : si.all_bits(true)) over.push_back(b);
  std::vector<Diagnostic> out;
  bool any_move = false;
  for (const auto& spec : si.src->actions) {
    if (spec.in_output()) {
      if (m.sat_count(si.out_rel(spec.name), over) == 0)
        out.push_back(Diagnostic::warning("output action '" + spec.name +
                                          "' is never enabled"));
      else
        any_move = true;
    }
    if (spec.in_input()) {
      if (m.sat_count(si.in_rel(spec.name), over) == 0)
        out.push_back(Diagnostic::warning("input action '" + spec.name +
                                          "' is never enabled"));
      else
        any_move = true;
    }
  }
  if (!any_move)
    out.push_back(
        Diagnostic::warning("interface is inert: no action is ever enabled"));
  return out;
}

}  // namespace sic
