#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sic/compose.hh"
#include "sic/diag.hh"
#include "sic/refine.hh"
#include "sic/safety.hh"
#include "sic/symbolic.hh"
#include "sic/trace.hh"

using nlohmann::ordered_json;
using namespace sic;

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ms_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                            start)
          .count());
}

ordered_json stats_of(std::size_t nodes, int iterations, std::uint64_t ms) {
  return ordered_json{
      {"nodes", nodes}, {"iterations", iterations}, {"time_ms", ms}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const ModuleAST& find_module(const std::vector<ModuleAST>& mods,
                             const std::string& name) {
  for (const ModuleAST& m : mods)
    if (m.name == name) return m;
  std::string have;
  for (const ModuleAST& m : mods) {
    if (!have.empty()) have += ", ";
    have += m.name;
  }
  throw Error("no module '" + name + "' in input (have: " + have + ")");
}

// Valuation rendered `name=value ...` in declaration order; booleans
// print as true/false, matching the trace formatter.
std::string format_state(const std::vector<VarInfo>& vars, const Valuation& v,
                         bool globals) {
  std::string out;
  for (const VarInfo& var : vars) {
    if (var.is_global != globals) continue;
    auto it = v.find(var.name);
    if (it == v.end()) continue;
    if (!out.empty()) out += " ";
    out += var.name + "=";
    if (var.is_bool)
      out += it->second ? "true" : "false";
    else
      out += std::to_string(it->second);
  }
  return out;
}

int run_compose(const std::string& file, const std::vector<std::string>& mods,
                const std::string& out_path, bool json) {
  if (mods[0] == mods[1])
    throw Error("compose needs two distinct modules, got '" + mods[0] +
                "' twice");
  auto start = Clock::now();
  std::vector<ModuleAST> asts = parse(read_file(file), file);
  Interface p = validate(find_module(asts, mods[0]));
  Interface q = validate(find_module(asts, mods[1]));

  bdd::Manager m;
  VarTable table(m);
  SymbolicInterface sp = compile(p, table);
  SymbolicInterface sq = compile(q, table);

  try {
    CompositionResult res = compose(sp, sq);
    std::string text = pretty_print(res.module);
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw Error("cannot write '" + out_path + "'");
      out << text;
    }
    if (json) {
      ordered_json j;
      j["verdict"] = "COMPATIBLE";
      j["composite"] = text;
      j["stats"] =
          stats_of(m.node_count(), res.attractor.iterations, ms_since(start));
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "COMPATIBLE\n";
      if (out_path.empty()) std::cout << text;
    }
    return 0;
  } catch (const IncompatibleError& e) {
    std::string witness = format_trace(e.vars, e.witness);
    int depth = e.witness.empty() ? 0 : static_cast<int>(e.witness.size()) - 1;
    if (json) {
      ordered_json j;
      j["verdict"] = "INCOMPATIBLE";
      j["witness"] = witness;
      j["action"] = e.action;
      j["emitter"] = e.emitter;
      j["stats"] = stats_of(m.node_count(), depth, ms_since(start));
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "INCOMPATIBLE\n";
      std::cout << witness;
      std::cout << e.what() << "\n";
    }
    return 1;
  }
}

int run_refine(const std::string& file, const std::vector<std::string>& mods,
               bool json) {
  auto start = Clock::now();
  std::vector<ModuleAST> asts = parse(read_file(file), file);
  Interface p = validate(find_module(asts, mods[0]));
  Interface q = validate(find_module(asts, mods[1]));

  bdd::Manager m;
  VarTable table(m);
  SymbolicInterface sp = compile(p, table, "1");
  SymbolicInterface sq = compile(q, table, "2");

  RefineResult r = refines(sp, sq);
  ordered_json j;
  std::string condition, detail;
  if (!r.refines) {
    const RefineCounterexample& ce = *r.counterexample;
    switch (ce.reason) {
      case RefineReason::Alphabet: {
        condition = "alphabet('" + ce.action + "')";
        const ActionSpec* in_q = q.find_action(ce.action);
        if (in_q && in_q->in_input())
          detail = "input '" + ce.action + "' of '" + q.name +
                   "' is missing from '" + p.name + "'";
        else
          detail = "output '" + ce.action + "' of '" + p.name +
                   "' is not allowed by '" + q.name + "'";
        break;
      }
      case RefineReason::Init:
        condition = "init";
        detail = "unmatched initial state: " +
                 format_state(q.vars, ce.q_locals, false);
        if (!ce.globals.empty()) {
          std::string g = format_state(q.vars, ce.globals, true);
          if (!g.empty()) detail += " | " + g;
        }
        break;
      case RefineReason::InputOk:
        condition = "InputOk('" + ce.action + "')";
        break;
      case RefineReason::OutputOk:
        condition = "OutputOk('" + ce.action + "')";
        break;
    }
  }
  if (json) {
    j["verdict"] = r.refines ? "REFINES" : "DOES-NOT-REFINE";
    if (!r.refines) {
      const RefineCounterexample& ce = *r.counterexample;
      j["condition"] = condition;
      if (!ce.action.empty()) j["action"] = ce.action;
      if (ce.has_triple) {
        j["p_state"] = format_state(p.vars, ce.p_locals, false);
        j["q_state"] = format_state(q.vars, ce.q_locals, false);
        j["globals"] = format_state(q.vars, ce.globals, true);
      }
    }
    j["stats"] = stats_of(m.node_count(), r.iterations, ms_since(start));
    std::cout << j.dump(2) << "\n";
  } else if (r.refines) {
    std::cout << "REFINES\n";
  } else {
    const RefineCounterexample& ce = *r.counterexample;
    std::cout << "DOES-NOT-REFINE\n";
    std::cout << "condition: " << condition << "\n";
    if (!detail.empty()) std::cout << detail << "\n";
    if (ce.has_triple) {
      std::cout << "P state: " << format_state(p.vars, ce.p_locals, false)
                << "\n";
      std::cout << "Q state: " << format_state(q.vars, ce.q_locals, false)
                << "\n";
      std::string g = format_state(q.vars, ce.globals, true);
      if (!g.empty()) std::cout << "globals: " << g << "\n";
    }
  }
  return r.refines ? 0 : 1;
}

int run_check(const std::string& file, const std::string& mod,
              const std::string& invariant, const std::string& mode,
              bool json) {
  auto start = Clock::now();
  std::vector<ModuleAST> asts = parse(read_file(file), file);
  Interface i = validate(find_module(asts, mod));
  ExprPtr phi = parse_expression(invariant, "<invariant>");

  bdd::Manager m;
  VarTable table(m);
  SymbolicInterface si = compile(i, table);

  ordered_json j;
  if (mode == "pessimistic") {
    PessimisticResult res = check_pessimistic(si, *phi);
    std::string witness =
        res.safe ? std::string() : format_trace(i, res.trace);
    if (json) {
      j["verdict"] = res.safe ? "SAFE" : "UNSAFE";
      if (!res.safe) j["witness"] = witness;
      j["stats"] = stats_of(m.node_count(), res.iterations, ms_since(start));
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << (res.safe ? "SAFE" : "UNSAFE") << "\n";
      if (!res.safe) std::cout << witness;
    }
    return res.safe ? 0 : 1;
  }
  OptimisticResult res = check_optimistic(si, *phi);
  std::uint64_t winning = m.sat_count(res.winning, si.all_bits(false));
  if (json) {
    j["verdict"] = res.safe ? "SAFE" : "UNSAFE";
    j["winning"] = winning;
    j["stats"] = stats_of(m.node_count(), res.iterations, ms_since(start));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (res.safe ? "SAFE" : "UNSAFE") << "\n";
    std::cout << "winning states: " << winning << "\n";
  }
  return res.safe ? 0 : 1;
}

int run_wf(const std::string& file, const std::string& mod, bool json) {
  auto start = Clock::now();
  std::vector<ModuleAST> asts = parse(read_file(file), file);
  const ModuleAST& ast = find_module(asts, mod);

  std::vector<std::string> lines;
  bool ok = true;
  std::size_t nodes = 0;
  try {
    Interface i = validate(ast);
    bdd::Manager m;
    VarTable table(m);
    SymbolicInterface si = compile(i, table);
    for (const Diagnostic& d : well_formed(si))
      lines.push_back(format_diagnostic(d));
    nodes = m.node_count();
  } catch (const ValidationError& e) {
    ok = false;
    for (const Diagnostic& d : e.diagnostics)
      lines.push_back(format_diagnostic(d));
  }

  if (json) {
    ordered_json j;
    j["verdict"] = ok ? "WELL-FORMED" : "ILL-FORMED";
    j["diagnostics"] = lines;
    j["stats"] = stats_of(nodes, 0, ms_since(start));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (ok ? "WELL-FORMED" : "ILL-FORMED") << "\n";
    for (const std::string& l : lines) std::cout << l << "\n";
  }
  return ok ? 0 : 1;
}

int run_info(const std::string& file, bool json) {
  auto start = Clock::now();
  std::vector<ModuleAST> asts = parse(read_file(file), file);
  ordered_json out = ordered_json::array();
  for (const ModuleAST& ast : asts) {
    Interface i = validate(ast);
    std::uint64_t states = 1;
    int globals = 0;
    for (const VarInfo& v : i.vars) {
      states *= static_cast<std::uint64_t>(v.card());
      if (v.is_global) ++globals;
    }
    if (json) {
      ordered_json j;
      j["name"] = i.name;
      j["vars"] = i.vars.size();
      j["globals"] = globals;
      j["inputs"] = i.input_alphabet();
      j["outputs"] = i.output_alphabet();
      j["states"] = states;
      out.push_back(j);
    } else {
      std::cout << "module " << i.name << "\n";
      std::cout << "  vars:";
      for (const VarInfo& v : i.vars) {
        std::cout << " " << v.name;
        if (v.is_bool)
          std::cout << ":bool";
        else
          std::cout << ":[" << v.lo << ".." << v.hi << "]";
        if (v.is_global) std::cout << "(global)";
      }
      std::cout << "\n";
      auto list = [](const std::vector<std::string>& xs) {
        if (xs.empty()) return std::string("(none)");
        std::string s;
        for (const auto& x : xs) {
          if (!s.empty()) s += " ";
          s += x;
        }
        return s;
      };
      std::cout << "  inputs: " << list(i.input_alphabet()) << "\n";
      std::cout << "  outputs: " << list(i.output_alphabet()) << "\n";
      std::cout << "  states: " << states << "\n";
    }
  }
  if (json) {
    ordered_json j;
    j["verdict"] = "OK";
    j["modules"] = out;
    j["stats"] = stats_of(0, 0, ms_since(start));
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic toolkit for sociable interfaces"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable verdict object");

  std::string file, out_path, mod, invariant, mode = "pessimistic";
  std::vector<std::string> mods;

  CLI::App* c_compose =
      app.add_subcommand("compose", "compose two interfaces");
  c_compose->add_option("file", file, "input .si file")->required();
  c_compose->add_option("-m,--module", mods, "the two modules to compose")
      ->required()
      ->expected(2);
  c_compose->add_option("-o,--output", out_path, "write the composite here");

  CLI::App* c_refine =
      app.add_subcommand("refine", "does the first module refine the second");
  c_refine->add_option("file", file, "input .si file")->required();
  c_refine->add_option("-m,--module", mods, "implementation, then spec")
      ->required()
      ->expected(2);

  CLI::App* c_check = app.add_subcommand("check", "check a safety invariant");
  c_check->add_option("file", file, "input .si file")->required();
  c_check->add_option("-m,--module", mod, "module to check")->required();
  c_check->add_option("--invariant", invariant, "boolean .si expression")
      ->required();
  c_check->add_option("--mode", mode, "pessimistic or optimistic")
      ->check(CLI::IsMember({"pessimistic", "optimistic"}));

  CLI::App* c_wf = app.add_subcommand("wf", "well-formedness diagnostics");
  c_wf->add_option("file", file, "input .si file")->required();
  c_wf->add_option("-m,--module", mod, "module to inspect")->required();

  CLI::App* c_info = app.add_subcommand("info", "summarize a .si file");
  c_info->add_option("file", file, "input .si file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_compose->parsed()) return run_compose(file, mods, out_path, json);
    if (c_refine->parsed()) return run_refine(file, mods, json);
    if (c_check->parsed()) return run_check(file, mod, invariant, mode, json);
    if (c_wf->parsed()) return run_wf(file, mod, json);
    if (c_info->parsed()) return run_info(file, json);
  } catch (const ParseError& e) {
    std::cerr << format_diagnostic(e.diagnostic) << "\n";
    return 2;
  } catch (const ValidationError& e) {
    for (const Diagnostic& d : e.diagnostics)
      std::cerr << format_diagnostic(d) << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
