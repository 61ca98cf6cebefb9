#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sic/diag.hh"

namespace sic {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression tree of the guarded-command language. Immutable; shared
// freely. Spans are carried for diagnostics and ignored by equality.
struct Expr {
  enum class Kind { IntLit, BoolLit, Var, Not, Binary };
  enum class BinOp { Or, And, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul };

  Kind kind = Kind::IntLit;
  SourceSpan span;
  long value = 0;        // IntLit
  bool bvalue = false;   // BoolLit
  std::string name;      // Var
  bool primed = false;   // Var
  BinOp op = BinOp::Or;  // Binary
  ExprPtr lhs, rhs;      // Binary; Not uses lhs only
};

ExprPtr make_int(long v, SourceSpan span = {});
ExprPtr make_bool(bool v, SourceSpan span = {});
ExprPtr make_var(std::string name, bool primed = false, SourceSpan span = {});
ExprPtr make_not(ExprPtr e, SourceSpan span = {});
ExprPtr make_binary(Expr::BinOp op, ExprPtr l, ExprPtr r,
                    SourceSpan span = {});

bool expr_equal(const Expr& a, const Expr& b);

// var x: [lo..hi]  |  var x: bool  (is_global for `global var`)
struct Decl {
  std::string name;
  bool is_global = false;
  bool is_bool = false;
  long lo = 0, hi = 0;  // integer domains only
  SourceSpan span;
};

struct Assign {
  std::string var;  // assigned primed variable
  ExprPtr value;
  SourceSpan span;
};

struct Command {
  ExprPtr guard;
  std::vector<Assign> assigns;
  SourceSpan span;
};

struct ActionBlock {
  std::string action;
  bool is_output = false;
  std::vector<Command> commands;
  SourceSpan span;
};

struct ModuleAST {
  std::string name;
  std::vector<Decl> decls;
  std::vector<ActionBlock> actions;
  ExprPtr init;
  SourceSpan span;
};

bool module_equal(const ModuleAST& a, const ModuleAST& b);

// Parses a .si file into one AST per module block. Throws ParseError.
std::vector<ModuleAST> parse(std::string_view text, const std::string& file);

// Parses a single expression (the invariant syntax of `check`); the
// whole text must be consumed.
ExprPtr parse_expression(std::string_view text, const std::string& file);

// Canonical text form; parse(pretty_print(m)) is structurally equal to m.
std::string pretty_print(const ModuleAST& m);
std::string pretty_print(const std::vector<ModuleAST>& modules);
std::string pretty_print(const Expr& e);

}  // namespace sic
