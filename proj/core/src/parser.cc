#include <cctype>
#include <cstdlib>
#include <unordered_set>

#include "sic/ast.hh"

namespace sic {

ExprPtr make_int(long v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::IntLit;
  e->value = v;
  e->span = span;
  return e;
}

ExprPtr make_bool(bool v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::BoolLit;
  e->bvalue = v;
  e->span = span;
  return e;
}

ExprPtr make_var(std::string name, bool primed, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->name = std::move(name);
  e->primed = primed;
  e->span = span;
  return e;
}

ExprPtr make_not(ExprPtr inner, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Not;
  e->lhs = std::move(inner);
  e->span = span;
  return e;
}

ExprPtr make_binary(Expr::BinOp op, ExprPtr l, ExprPtr r, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binary;
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  e->span = span;
  return e;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::IntLit: return a.value == b.value;
    case Expr::Kind::BoolLit: return a.bvalue == b.bvalue;
    case Expr::Kind::Var: return a.name == b.name && a.primed == b.primed;
    case Expr::Kind::Not: return expr_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
      return a.op == b.op && expr_equal(*a.lhs, *b.lhs) &&
             expr_equal(*a.rhs, *b.rhs);
  }
  return false;
}

bool module_equal(const ModuleAST& a, const ModuleAST& b) {
  if (a.name != b.name) return false;
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const Decl &da = a.decls[i], &db = b.decls[i];
    if (da.name != db.name || da.is_global != db.is_global ||
        da.is_bool != db.is_bool)
      return false;
    if (!da.is_bool && (da.lo != db.lo || da.hi != db.hi)) return false;
  }
  if (a.actions.size() != b.actions.size()) return false;
  for (std::size_t i = 0; i < a.actions.size(); ++i) {
    const ActionBlock &xa = a.actions[i], &xb = b.actions[i];
    if (xa.action != xb.action || xa.is_output != xb.is_output) return false;
    if (xa.commands.size() != xb.commands.size()) return false;
    for (std::size_t j = 0; j < xa.commands.size(); ++j) {
      const Command &ca = xa.commands[j], &cb = xb.commands[j];
      if (!expr_equal(*ca.guard, *cb.guard)) return false;
      if (ca.assigns.size() != cb.assigns.size()) return false;
      for (std::size_t k = 0; k < ca.assigns.size(); ++k) {
        if (ca.assigns[k].var != cb.assigns[k].var) return false;
        if (!expr_equal(*ca.assigns[k].value, *cb.assigns[k].value))
          return false;
      }
    }
  }
  return expr_equal(*a.init, *b.init);
}

namespace {

enum class Tok {
  End, Ident, Int,
  KwModule, KwVar, KwGlobal, KwOutput, KwInput, KwInit, KwBool, KwTrue, KwFalse,
  Colon, LBracket, RBracket, DotDot, LBrace, RBrace, Semi, Comma,
  LParen, RParen, Arrow, Assign,
  Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, Amp, Pipe, Bang, Prime,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::KwModule: return "'module'";
    case Tok::KwVar: return "'var'";
    case Tok::KwGlobal: return "'global'";
    case Tok::KwOutput: return "'output'";
    case Tok::KwInput: return "'input'";
    case Tok::KwInit: return "'init'";
    case Tok::KwBool: return "'bool'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::Colon: return "':'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::DotDot: return "'..'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Arrow: return "'==>'";
    case Tok::Assign: return "':='";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Prime: return "'''";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long value = 0;
  SourceSpan span;
};

struct Lexer {
  std::string_view src;
  std::string file;
  std::size_t pos = 0;
  int line = 1, col = 1;

  Lexer(std::string_view s, std::string f) : src(s), file(std::move(f)) {}

  [[noreturn]] void fail(const std::string& msg, SourceSpan span) {
    throw ParseError(Diagnostic::error(msg, span));
  }

  SourceSpan here(int length) const {
    return SourceSpan{file, line, col, length};
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    for (;;) {
      while (pos < src.size() &&
             (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
              src[pos] == '\n'))
        advance();
      if (pos + 1 < src.size() && src[pos] == '/' && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    if (pos >= src.size()) return Token{Tok::End, "", 0, here(1)};

    SourceSpan span = here(1);
    char c = src[pos];
    auto take = [&](Tok kind, int len) {
      span.length = len;
      std::string text(src.substr(pos, len));
      for (int i = 0; i < len; ++i) advance();
      return Token{kind, text, 0, span};
    };
    auto peek2 = [&](char want) {
      return pos + 1 < src.size() && src[pos + 1] == want;
    };

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '_'))
        advance();
      std::string text(src.substr(start, pos - start));
      span.length = static_cast<int>(text.size());
      Tok kind = Tok::Ident;
      if (text == "module") kind = Tok::KwModule;
      else if (text == "var") kind = Tok::KwVar;
      else if (text == "global") kind = Tok::KwGlobal;
      else if (text == "output") kind = Tok::KwOutput;
      else if (text == "input") kind = Tok::KwInput;
      else if (text == "init") kind = Tok::KwInit;
      else if (text == "bool") kind = Tok::KwBool;
      else if (text == "true") kind = Tok::KwTrue;
      else if (text == "false") kind = Tok::KwFalse;
      return Token{kind, text, 0, span};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos])))
        advance();
      std::string text(src.substr(start, pos - start));
      span.length = static_cast<int>(text.size());
      errno = 0;
      long v = std::strtol(text.c_str(), nullptr, 10);
      if (errno != 0) fail("integer literal out of range", span);
      return Token{Tok::Int, text, v, span};
    }
    switch (c) {
      case ':': return peek2('=') ? take(Tok::Assign, 2) : take(Tok::Colon, 1);
      case '[': return take(Tok::LBracket, 1);
      case ']': return take(Tok::RBracket, 1);
      case '{': return take(Tok::LBrace, 1);
      case '}': return take(Tok::RBrace, 1);
      case ';': return take(Tok::Semi, 1);
      case ',': return take(Tok::Comma, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case '\'': return take(Tok::Prime, 1);
      case '.':
        if (peek2('.')) return take(Tok::DotDot, 2);
        fail("stray '.'", span);
      case '=':
        if (peek2('=')) {
          if (pos + 2 < src.size() && src[pos + 2] == '>')
            return take(Tok::Arrow, 3);
          fail("'==' is not an operator; equality is written '='", span);
        }
        return take(Tok::Eq, 1);
      case '!': return peek2('=') ? take(Tok::Ne, 2) : take(Tok::Bang, 1);
      case '<': return peek2('=') ? take(Tok::Le, 2) : take(Tok::Lt, 1);
      case '>': return peek2('=') ? take(Tok::Ge, 2) : take(Tok::Gt, 1);
      case '+': return take(Tok::Plus, 1);
      case '-': return take(Tok::Minus, 1);
      case '*': return take(Tok::Star, 1);
      case '&': return take(Tok::Amp, 1);
      case '|': return take(Tok::Pipe, 1);
      default:
        fail(std::string("unexpected character '") + c + "'", span);
    }
  }
};

struct Parser {
  Lexer lex;
  Token tok;

  Parser(std::string_view text, const std::string& file)
      : lex(text, file) {
    tok = lex.next();
  }

  [[noreturn]] void fail(const std::string& msg, SourceSpan span) {
    throw ParseError(Diagnostic::error(msg, span));
  }
  [[noreturn]] void expected(const std::string& what) {
    fail("expected " + what + ", found " + tok_name(tok.kind), tok.span);
  }

  bool at(Tok k) const { return tok.kind == k; }
  Token eat() {
    Token t = tok;
    tok = lex.next();
    return t;
  }
  Token expect(Tok k) {
    if (!at(k)) expected(tok_name(k));
    return eat();
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    eat();
    return true;
  }

  std::vector<ModuleAST> parse_file() {
    std::vector<ModuleAST> modules;
    std::unordered_set<std::string> names;
    while (!at(Tok::End)) {
      if (!at(Tok::KwModule)) expected("'module'");
      ModuleAST m = parse_module();
      if (!names.insert(m.name).second)
        fail("duplicate module name '" + m.name + "'", m.span);
      modules.push_back(std::move(m));
    }
    return modules;
  }

  ModuleAST parse_module() {
    ModuleAST m;
    m.span = expect(Tok::KwModule).span;
    m.name = expect(Tok::Ident).text;
    expect(Tok::Colon);
    while (at(Tok::KwVar) || at(Tok::KwGlobal)) m.decls.push_back(parse_decl());
    while (at(Tok::KwOutput) || at(Tok::KwInput))
      m.actions.push_back(parse_action());
    expect(Tok::KwInit);
    expect(Tok::Colon);
    m.init = parse_expr();
    return m;
  }

  Decl parse_decl() {
    Decl d;
    d.is_global = accept(Tok::KwGlobal);
    d.span = expect(Tok::KwVar).span;
    Token name = expect(Tok::Ident);
    d.name = name.text;
    d.span = name.span;
    expect(Tok::Colon);
    if (accept(Tok::KwBool)) {
      d.is_bool = true;
    } else if (accept(Tok::LBracket)) {
      d.lo = expect(Tok::Int).value;
      expect(Tok::DotDot);
      d.hi = expect(Tok::Int).value;
      expect(Tok::RBracket);
    } else {
      expected("'bool' or '['");
    }
    return d;
  }

  ActionBlock parse_action() {
    ActionBlock a;
    a.is_output = at(Tok::KwOutput);
    a.span = eat().span;  // output/input keyword
    a.action = expect(Tok::Ident).text;
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) a.commands.push_back(parse_command());
    expect(Tok::RBrace);
    return a;
  }

  Command parse_command() {
    Command c;
    c.guard = parse_expr();
    c.span = c.guard->span;
    expect(Tok::Arrow);
    if (!at(Tok::Semi)) {
      c.assigns.push_back(parse_assign());
      while (accept(Tok::Comma)) c.assigns.push_back(parse_assign());
    }
    expect(Tok::Semi);
    return c;
  }

  Assign parse_assign() {
    Assign a;
    Token name = expect(Tok::Ident);
    a.var = name.text;
    a.span = name.span;
    expect(Tok::Prime);
    expect(Tok::Assign);
    a.value = parse_expr();
    return a;
  }

  // Precedence, loosest first: |  &  !  comparisons  + -  *
  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (at(Tok::Pipe)) {
      SourceSpan span = eat().span;
      e = make_binary(Expr::BinOp::Or, e, parse_and(), span);
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_not();
    while (at(Tok::Amp)) {
      SourceSpan span = eat().span;
      e = make_binary(Expr::BinOp::And, e, parse_not(), span);
    }
    return e;
  }

  ExprPtr parse_not() {
    if (at(Tok::Bang)) {
      SourceSpan span = eat().span;
      return make_not(parse_not(), span);
    }
    return parse_cmp();
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_sum();
    Expr::BinOp op;
    switch (tok.kind) {
      case Tok::Eq: op = Expr::BinOp::Eq; break;
      case Tok::Ne: op = Expr::BinOp::Ne; break;
      case Tok::Lt: op = Expr::BinOp::Lt; break;
      case Tok::Le: op = Expr::BinOp::Le; break;
      case Tok::Gt: op = Expr::BinOp::Gt; break;
      case Tok::Ge: op = Expr::BinOp::Ge; break;
      default: return e;
    }
    SourceSpan span = eat().span;
    // Comparisons do not chain: a = b = c is rejected here.
    return make_binary(op, e, parse_sum(), span);
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Expr::BinOp op = at(Tok::Plus) ? Expr::BinOp::Add : Expr::BinOp::Sub;
      SourceSpan span = eat().span;
      e = make_binary(op, e, parse_term(), span);
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_atom();
    while (at(Tok::Star)) {
      SourceSpan span = eat().span;
      e = make_binary(Expr::BinOp::Mul, e, parse_atom(), span);
    }
    return e;
  }

  ExprPtr parse_atom() {
    switch (tok.kind) {
      case Tok::Int: {
        Token t = eat();
        return make_int(t.value, t.span);
      }
      case Tok::KwTrue: return make_bool(true, eat().span);
      case Tok::KwFalse: return make_bool(false, eat().span);
      case Tok::Ident: {
        Token t = eat();
        bool primed = accept(Tok::Prime);
        return make_var(t.text, primed, t.span);
      }
      case Tok::LParen: {
        eat();
        ExprPtr e = parse_expr();
        expect(Tok::RParen);
        return e;
      }
      default:
        expected("an expression");
    }
  }
};

}  // namespace

std::vector<ModuleAST> parse(std::string_view text, const std::string& file) {
  Parser p(text, file);
  return p.parse_file();
}

ExprPtr parse_expression(std::string_view text, const std::string& file) {
  Parser p(text, file);
  ExprPtr e = p.parse_or();
  p.expect(Tok::End);
  return e;
}

}  // namespace sic
