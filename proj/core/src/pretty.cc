#include <sstream>

#include "sic/ast.hh"

namespace sic {

namespace {

// Binding strength, loosest first; atoms are tightest.
int level_of(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      switch (e.op) {
        case Expr::BinOp::Or: return 1;
        case Expr::BinOp::And: return 2;
        case Expr::BinOp::Eq:
        case Expr::BinOp::Ne:
        case Expr::BinOp::Lt:
        case Expr::BinOp::Le:
        case Expr::BinOp::Gt:
        case Expr::BinOp::Ge: return 4;
        case Expr::BinOp::Add:
        case Expr::BinOp::Sub: return 5;
        case Expr::BinOp::Mul: return 6;
      }
      return 7;
    case Expr::Kind::Not: return 3;
    default: return 7;
  }
}

const char* op_text(Expr::BinOp op) {
  switch (op) {
    case Expr::BinOp::Or: return "|";
    case Expr::BinOp::And: return "&";
    case Expr::BinOp::Eq: return "=";
    case Expr::BinOp::Ne: return "!=";
    case Expr::BinOp::Lt: return "<";
    case Expr::BinOp::Le: return "<=";
    case Expr::BinOp::Gt: return ">";
    case Expr::BinOp::Ge: return ">=";
    case Expr::BinOp::Add: return "+";
    case Expr::BinOp::Sub: return "-";
    case Expr::BinOp::Mul: return "*";
  }
  return "?";
}

void print_expr(std::ostream& os, const Expr& e, int min_level) {
  int lv = level_of(e);
  bool parens = lv < min_level;
  if (parens) os << '(';
  switch (e.kind) {
    case Expr::Kind::IntLit: os << e.value; break;
    case Expr::Kind::BoolLit: os << (e.bvalue ? "true" : "false"); break;
    case Expr::Kind::Var:
      os << e.name;
      if (e.primed) os << '\'';
      break;
    case Expr::Kind::Not:
      os << '!';
      print_expr(os, *e.lhs, lv);
      break;
    case Expr::Kind::Binary:
      // Left-associative, so the right operand must bind strictly
      // tighter; comparisons don't chain, so there both must.
      print_expr(os, *e.lhs, lv == 4 ? lv + 1 : lv);
      os << ' ' << op_text(e.op) << ' ';
      print_expr(os, *e.rhs, lv + 1);
      break;
  }
  if (parens) os << ')';
}

void print_command(std::ostream& os, const Command& c) {
  print_expr(os, *c.guard, 0);
  os << " ==>";
  for (std::size_t i = 0; i < c.assigns.size(); ++i) {
    os << (i == 0 ? " " : ", ") << c.assigns[i].var << "' := ";
    print_expr(os, *c.assigns[i].value, 0);
  }
  os << ";";
}

void print_module(std::ostream& os, const ModuleAST& m) {
  os << "module " << m.name << ":\n";
  for (const Decl& d : m.decls) {
    os << "  " << (d.is_global ? "global var " : "var ") << d.name << ": ";
    if (d.is_bool)
      os << "bool";
    else
      os << '[' << d.lo << ".." << d.hi << ']';
    os << '\n';
  }
  for (const ActionBlock& a : m.actions) {
    os << "  " << (a.is_output ? "output " : "input ") << a.action << " {";
    if (a.commands.empty()) {
      os << "}\n";
      continue;
    }
    os << '\n';
    for (const Command& c : a.commands) {
      os << "    ";
      print_command(os, c);
      os << '\n';
    }
    os << "  }\n";
  }
  os << "  init: ";
  print_expr(os, *m.init, 0);
  os << '\n';
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string pretty_print(const ModuleAST& m) {
  std::ostringstream os;
  print_module(os, m);
  return os.str();
}

std::string pretty_print(const std::vector<ModuleAST>& modules) {
  std::ostringstream os;
  for (std::size_t i = 0; i < modules.size(); ++i) {
    if (i) os << '\n';
    print_module(os, modules[i]);
  }
  return os.str();
}

}  // namespace sic
