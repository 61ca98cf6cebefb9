#include "sic/diag.hh"

#include <sstream>

namespace sic {

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  if (d.has_span) {
    os << d.span.file << ":" << d.span.line << ":" << d.span.column << ": ";
  }
  os << (d.severity == Severity::Error ? "error: " : "warning: ");
  os << d.message;
  return os.str();
}

static std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) os << "\n";
    os << format_diagnostic(ds[i]);
  }
  return os.str();
}

ValidationError::ValidationError(std::vector<Diagnostic> ds)
    : Error(join_diagnostics(ds)), diagnostics(std::move(ds)) {}

}  // namespace sic
