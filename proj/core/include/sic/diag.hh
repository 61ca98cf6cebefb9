#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sic {

// Position of a token or construct in a .si source file. Lines and
// columns are 1-based; length is in characters.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 1;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;
  bool has_span = false;

  static Diagnostic error(std::string msg, SourceSpan sp) {
    return Diagnostic{Severity::Error, std::move(msg), std::move(sp), true};
  }
  static Diagnostic error(std::string msg) {
    return Diagnostic{Severity::Error, std::move(msg), SourceSpan{}, false};
  }
  static Diagnostic warning(std::string msg) {
    return Diagnostic{Severity::Warning, std::move(msg), SourceSpan{}, false};
  }
};

std::string format_diagnostic(const Diagnostic& d);

// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// API misuse: unregistered bits, cross-manager operands, out-of-domain
// states, sat_count over a set that misses support bits, and the like.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Lexical or syntax error. Carries exactly one diagnostic.
class ParseError : public Error {
 public:
  explicit ParseError(Diagnostic d)
      : Error(format_diagnostic(d)), diagnostic(std::move(d)) {}
  Diagnostic diagnostic;
};

// Semantic errors found while validating a parsed module. Collects all
// diagnostics instead of stopping at the first one.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> ds);
  std::vector<Diagnostic> diagnostics;
};

// Structural errors raised when a product cannot be formed at all
// (clashing local names, global domain mismatch).
class ComposeError : public Error {
 public:
  explicit ComposeError(const std::string& msg) : Error(msg) {}
};

}  // namespace sic
