#pragma once

#include <random>
#include <string>

#include "sic/model.hh"

namespace sic::testing {

// Random well-formed modules for property tests. Globals come from a
// fixed pool with fixed domains, so any two generated modules can be
// composed or compared without domain clashes. Generated expressions
// are type-correct by construction; the only validity retry is the
// satisfiability of a random init, handled inside random_interface.
struct GenConfig {
  int min_vars = 1;
  int max_vars = 3;
  int max_actions = 2;
  int max_cmds = 2;
  int expr_depth = 2;
  int global_percent = 50;  // chance a variable is drawn from the pool
  std::string local_prefix = "l";  // keeps pair generations clash-free
};

struct PoolVar {
  const char* name;
  bool is_bool;
  long lo, hi;
};
inline constexpr PoolVar kGlobalPool[] = {
    {"g0", true, 0, 1}, {"g1", false, 0, 2}, {"g2", false, 0, 3}};
inline constexpr const char* kActionPool[] = {"a", "b", "c"};

class ModuleGen {
 public:
  ModuleGen(std::mt19937& rng, GenConfig cfg) : rng_(rng), cfg_(cfg) {}

  ModuleAST module(const std::string& name) {
    ModuleAST m;
    m.name = name;
    decls_.clear();
    int nvars = pick(cfg_.min_vars, cfg_.max_vars);
    int next_local = 0, next_global = 0;
    for (int k = 0; k < nvars; ++k) {
      Decl d;
      if (next_global < 3 && pick(1, 100) <= cfg_.global_percent) {
        const PoolVar& p = kGlobalPool[next_global++];
        d.name = p.name;
        d.is_global = true;
        d.is_bool = p.is_bool;
        d.lo = p.lo;
        d.hi = p.hi;
      } else {
        d.name = cfg_.local_prefix + std::to_string(next_local++);
        switch (pick(0, 3)) {
          case 0: d.is_bool = true; break;
          case 1: d.lo = 0; d.hi = 1; break;
          case 2: d.lo = 0; d.hi = 2; break;
          default: d.lo = pick(0, 1); d.hi = d.lo + pick(1, 3); break;
        }
      }
      decls_.push_back(d);
      m.decls.push_back(d);
    }
    int nactions = pick(1, cfg_.max_actions);
    for (int k = 0; k < nactions; ++k) {
      int n_out = pick(0, cfg_.max_cmds);
      int n_in = pick(0, cfg_.max_cmds);
      if (n_out == 0 && n_in == 0) (pick(0, 1) ? n_out : n_in) = 1;
      if (n_out > 0) m.actions.push_back(action(kActionPool[k], true, n_out));
      if (n_in > 0) m.actions.push_back(action(kActionPool[k], false, n_in));
    }
    m.init = bool_expr(cfg_.expr_depth, false);
    return m;
  }

  ExprPtr bool_expr(int depth, bool primed_globals) {
    if (depth <= 0 || pick(0, 3) == 0) {  // leaf
      switch (pick(0, 3)) {
        case 0: return make_bool(pick(0, 1) != 0);
        case 1: {
          const Decl* v = pick_var(true, primed_globals);
          if (v) return var_ref(*v, primed_globals);
          return make_bool(true);
        }
        default: {  // comparison
          Expr::BinOp op = static_cast<Expr::BinOp>(
              static_cast<int>(Expr::BinOp::Eq) + pick(0, 5));
          return make_binary(op, int_expr(depth - 1, primed_globals),
                             int_expr(depth - 1, primed_globals));
        }
      }
    }
    switch (pick(0, 2)) {
      case 0: return make_not(bool_expr(depth - 1, primed_globals));
      case 1:
        return make_binary(Expr::BinOp::And, bool_expr(depth - 1, primed_globals),
                           bool_expr(depth - 1, primed_globals));
      default:
        return make_binary(Expr::BinOp::Or, bool_expr(depth - 1, primed_globals),
                           bool_expr(depth - 1, primed_globals));
    }
  }

  ExprPtr int_expr(int depth, bool primed_globals) {
    if (depth <= 0 || pick(0, 2) == 0) {
      if (pick(0, 1) == 0) {
        const Decl* v = pick_var(false, primed_globals);
        if (v) return var_ref(*v, primed_globals);
      }
      return make_int(pick(0, 4));
    }
    Expr::BinOp op = static_cast<Expr::BinOp>(
        static_cast<int>(Expr::BinOp::Add) + pick(0, 2));
    return make_binary(op, int_expr(depth - 1, primed_globals),
                       int_expr(depth - 1, primed_globals));
  }

 private:
  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  // A random variable of the wanted type; primed_on_globals lets the
  // reference be a primed global (input-command contexts).
  const Decl* pick_var(bool want_bool, bool /*primed_globals*/) {
    std::vector<const Decl*> fits;
    for (const Decl& d : decls_)
      if (d.is_bool == want_bool) fits.push_back(&d);
    if (fits.empty()) return nullptr;
    return fits[static_cast<std::size_t>(pick(0, static_cast<int>(fits.size()) - 1))];
  }

  ExprPtr var_ref(const Decl& d, bool primed_globals) {
    bool primed = primed_globals && d.is_global && pick(0, 1) == 0;
    return make_var(d.name, primed);
  }

  ActionBlock action(const char* name, bool is_output, int n_cmds) {
    ActionBlock b;
    b.action = name;
    b.is_output = is_output;
    for (int k = 0; k < n_cmds; ++k) {
      Command c;
      c.guard = bool_expr(cfg_.expr_depth, !is_output);
      for (const Decl& d : decls_) {
        if (!is_output && d.is_global) continue;  // inputs write locals only
        if (pick(0, 2) != 0) continue;
        Assign a;
        a.var = d.name;
        a.value = d.is_bool ? bool_expr(cfg_.expr_depth - 1, !is_output)
                            : int_expr(cfg_.expr_depth - 1, !is_output);
        // Constants must land in the target domain to pass validation.
        if (!d.is_bool && a.value->kind == Expr::Kind::IntLit &&
            (a.value->value < d.lo || a.value->value > d.hi))
          a.value = make_int(d.lo + a.value->value % (d.hi - d.lo + 1));
        c.assigns.push_back(std::move(a));
      }
      b.commands.push_back(std::move(c));
    }
    return b;
  }

  std::mt19937& rng_;
  GenConfig cfg_;
  std::vector<Decl> decls_;
};

inline ModuleAST random_module(std::mt19937& rng, const std::string& name,
                               const GenConfig& cfg = {}) {
  return ModuleGen(rng, cfg).module(name);
}

// Generates until the module validates; only a random unsatisfiable
// init can fail, so after a few tries it is forced to `true`.
inline Interface random_interface(std::mt19937& rng, const std::string& name,
                                  const GenConfig& cfg = {}) {
  for (int attempt = 0;; ++attempt) {
    ModuleAST m = random_module(rng, name, cfg);
    if (attempt >= 10) m.init = make_bool(true);
    try {
      return validate(m);
    } catch (const ValidationError&) {
      continue;
    }
  }
}

}  // namespace sic::testing
