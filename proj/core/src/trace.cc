#include "sic/trace.hh"

#include <sstream>

namespace sic {

std::string format_trace(const std::vector<VarInfo>& vars,
                         const std::vector<TraceStep>& steps) {
  std::ostringstream os;
  for (const auto& step : steps) {
    os << step.label << ':';
    for (const auto& v : vars) {
      auto it = step.state.find(v.name);
      if (it == step.state.end()) continue;
      os << ' ' << v.name << '=';
      if (v.is_bool)
        os << (it->second ? "true" : "false");
      else
        os << it->second;
    }
    os << '\n';
  }
  return os.str();
}

std::string format_trace(const Interface& i,
                         const std::vector<TraceStep>& steps) {
  return format_trace(i.vars, steps);
}

}  // namespace sic
