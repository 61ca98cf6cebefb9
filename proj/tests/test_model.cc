#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "sic/explicit.hh"
#include "sic/model.hh"
#include "sic/symbolic.hh"
#include "support/bridge.hh"
#include "support/ifgen.hh"

using namespace sic;
using namespace sic::testing;

namespace {

Interface load(const std::string& text) {
  return validate(parse(text, "t.si").at(0));
}

void expect_invalid(const std::string& text, const std::string& needle) {
  try {
    load(text);
    FAIL_CHECK("expected a validation error mentioning \"" << needle
                                                           << "\" for\n"
                                                           << text);
  } catch (const ValidationError& e) {
    bool found = false;
    for (const Diagnostic& d : e.diagnostics)
      if (d.message.find(needle) != std::string::npos) found = true;
    if (!found)
      FAIL_CHECK("no diagnostic mentions \"" << needle << "\"; got: "
                                             << e.what());
  }
}

// Cross-checks every symbolic move and acceptance set against the
// explicit-state interpretation of the same interface.
void check_agreement(const Interface& i, std::uint64_t cap = 4096) {
  ExplicitGraph g = enumerate_explicit(i, cap);
  bdd::Manager mgr;
  VarTable table(mgr);
  SymbolicInterface si = compile(i, table);

  for (std::uint64_t s = 0; s < g.state_count; ++s) {
    Valuation vs = to_valuation(i, g.values_of(s));
    bool sym_init = !mgr.is_false(mgr.conj(si.init, si.state_cube(vs, false)));
    bool exp_init = std::binary_search(g.init_states.begin(),
                                       g.init_states.end(), s);
    REQUIRE(sym_init == exp_init);

    auto moves = out_moves(si, vs);
    for (const ExplicitGraph::ActionEdges& e : g.actions) {
      std::vector<std::uint64_t> got;
      for (const auto& [action, succ] : moves)
        if (action == e.action) got.push_back(g.index_of(to_values(i, succ)));
      std::sort(got.begin(), got.end());
      std::vector<std::uint64_t> want =
          e.has_out ? e.out_edges[s] : std::vector<std::uint64_t>{};
      REQUIRE(got == want);

      if (e.has_in) {
        for (std::uint64_t gu = 0; gu < g.global_count; ++gu) {
          std::vector<long> gvals = g.global_values_of(gu);
          InAcceptance acc =
              in_accepts(si, vs, e.action, globals_valuation(i, gvals));
          REQUIRE(acc.listening);
          std::vector<std::uint64_t> got_in;
          for (const Valuation& resp : acc.responses)
            got_in.push_back(merge_response(g, resp, gvals));
          std::sort(got_in.begin(), got_in.end());
          REQUIRE(got_in == e.in_resp[s][gu]);
        }
      } else {
        InAcceptance acc =
            in_accepts(si, vs, e.action,
                       globals_valuation(i, g.global_values_of(0)));
        REQUIRE_FALSE(acc.listening);
      }
    }
  }
}

}  // namespace

TEST_CASE("validation accepts the sample and exposes alphabets") {
  Interface fire = load(
      "module Fire:\n var s: [0..1]\n global var alarm: bool\n"
      " output fire { s = 0 ==> s' := 1, alarm' := true; }\n"
      " init: s = 0 & alarm = false");
  CHECK(fire.vars.size() == 2);
  CHECK(fire.output_alphabet() == std::vector<std::string>{"fire"});
  CHECK(fire.input_alphabet().empty());
  CHECK(fire.find_var("alarm")->is_global);
  CHECK(fire.find_var("s")->bits() == 1);
}

TEST_CASE("validation rejects broken modules") {
  expect_invalid("module M:\ninit: x = 1", "unknown variable 'x'");
  expect_invalid("module M:\nvar x: [3..1]\ninit: true", "empty domain");
  expect_invalid("module M:\nvar x: bool\nvar x: bool\ninit: true",
                 "duplicate variable");
  expect_invalid(
      "module M:\nvar x: bool\noutput a { true ==> ; }\noutput a { x ==> ; }\n"
      "init: true",
      "duplicate output block");
  expect_invalid("module M:\nvar x: bool\noutput a {}\ninit: true",
                 "has no commands");
  expect_invalid(
      "module M:\nglobal var g: bool\ninput a { true ==> g' := true; }\n"
      "init: true",
      "assigns global variable");
  expect_invalid(
      "module M:\nvar x: bool\noutput a { x' ==> ; }\ninit: true",
      "not allowed in an output guard");
  expect_invalid(
      "module M:\nvar x: bool\ninput a { x' ==> ; }\ninit: true",
      "only globals may be read primed");
  expect_invalid(
      "module M:\nvar x: bool\noutput a { true ==> x' := true, x' := false; }\n"
      "init: true",
      "assigned twice");
  expect_invalid(
      "module M:\nvar x: [0..3]\noutput a { true ==> x' := 7; }\ninit: true",
      "outside the domain");
  expect_invalid("module M:\nvar x: [0..3]\ninit: x = 5", "unsatisfiable");
  expect_invalid("module M:\nvar x: bool\ninit: x'",
                 "not allowed in the initial condition");
  expect_invalid("module M:\nvar x: bool\ninit: x + 1 = 2",
                 "arithmetic over non-integer");
  expect_invalid("module M:\nvar x: bool\noutput a { x = 1 ==> ; }\ninit: true",
                 "comparison between boolean and integer");
}

TEST_CASE("conflicting global domains are rejected at binding time") {
  Interface a = load("module A:\nglobal var g: bool\ninit: true");
  Interface b = load("module B:\nglobal var g: [0..2]\ninit: true");
  bdd::Manager m;
  VarTable t(m);
  compile(a, t);
  CHECK_THROWS_AS(compile(b, t), ValidationError);
}

TEST_CASE("toggle command compiles to exactly two transition pairs") {
  Interface i = load(
      "module T:\n var x: [0..1]\n output a { true ==> x' := 1 - x; }\n"
      " init: x = 0");
  bdd::Manager m;
  VarTable t(m);
  SymbolicInterface si = compile(i, t);
  std::vector<int> both = si.all_bits(false);
  for (int b : si.all_bits(true)) both.push_back(b);
  CHECK(m.sat_count(si.out_rel("a"), both) == 2);

  auto moves = out_moves(si, {{"x", 0}});
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].first == "a");
  CHECK(moves[0].second.at("x") == 1);
  moves = out_moves(si, {{"x", 1}});
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].second.at("x") == 0);
}

TEST_CASE("an empty output side is not in the output alphabet") {
  Interface i = load(
      "module E:\n var x: bool\n output a {}\n input a { true ==> ; }\n"
      " init: true");
  CHECK(i.output_alphabet().empty());
  CHECK(i.input_alphabet() == std::vector<std::string>{"a"});
  bdd::Manager m;
  VarTable t(m);
  SymbolicInterface si = compile(i, t);
  CHECK(m.is_false(si.out_rel("a")));
}

TEST_CASE("overlapping commands: satisfying pairs match the explicit count") {
  Interface i = load(
      "module O:\n var x: [0..3]\n"
      " output a { x < 2 ==> x' := x + 1; x < 3 ==> x' := 0; }\n"
      " init: x = 0");
  ExplicitGraph g = enumerate_explicit(i, 64);
  std::uint64_t explicit_pairs = 0;
  for (const auto& succs : g.actions[0].out_edges)
    explicit_pairs += succs.size();
  CHECK(explicit_pairs == 5);

  bdd::Manager m;
  VarTable t(m);
  SymbolicInterface si = compile(i, t);
  std::vector<int> both = si.all_bits(false);
  for (int b : si.all_bits(true)) both.push_back(b);
  CHECK(m.sat_count(si.out_rel("a"), both) == explicit_pairs);
}

TEST_CASE("input acceptance: rejection, acceptance, not listening") {
  Interface i = load(
      "module I:\n var c: bool\n global var g: [0..1]\n"
      " input a { g' = 1 ==> ; }\n init: true");
  bdd::Manager m;
  VarTable t(m);
  SymbolicInterface si = compile(i, t);
  Valuation s{{"c", 0}, {"g", 0}};

  InAcceptance rej = in_accepts(si, s, "a", {{"g", 0}});
  CHECK(rej.listening);
  CHECK(rej.responses.empty());  // rejected

  InAcceptance acc = in_accepts(si, s, "a", {{"g", 1}});
  CHECK(acc.listening);
  REQUIRE(acc.responses.size() == 1);
  CHECK(acc.responses[0].at("c") == 0);  // locals unchanged

  CHECK_FALSE(in_accepts(si, s, "b", {{"g", 1}}).listening);
}

TEST_CASE("out-of-domain states are refused") {
  Interface i = load("module D:\n var x: [0..2]\n output a { true ==> ; }\n"
                     " init: x = 0");
  bdd::Manager m;
  VarTable t(m);
  SymbolicInterface si = compile(i, t);
  CHECK_THROWS_AS(out_moves(si, {{"x", 3}}), UsageError);
  CHECK_THROWS_AS(out_moves(si, Valuation{}), UsageError);
}

TEST_CASE("explicit enumeration counts states and honors the cap") {
  Interface i = load(
      "module S:\n var x: bool\n var y: [0..2]\n output a { true ==> ; }\n"
      " init: true");
  ExplicitGraph g = enumerate_explicit(i, 64);
  CHECK(g.state_count == 6);
  CHECK(g.init_states.size() == 6);
  CHECK_THROWS_AS(enumerate_explicit(i, 1), UsageError);
}

TEST_CASE("domain closure on both rails") {
  std::mt19937 rng(2024);
  for (int k = 0; k < 25; ++k) {
    Interface i = random_interface(rng, "M");
    bdd::Manager m;
    VarTable t(m);
    SymbolicInterface si = compile(i, t);
    bdd::Ref dom_both = m.conj(si.domain, si.domain_primed);
    for (const auto& [a, rel] : si.rho_out)
      CHECK(m.is_false(m.conj(rel, m.negate(dom_both))));
    for (const auto& [a, rel] : si.rho_in)
      CHECK(m.is_false(m.conj(rel, m.negate(dom_both))));
    CHECK(m.is_false(m.conj(si.init, m.negate(si.domain))));
  }
}

TEST_CASE("transition predicates touch only the interface's own bits") {
  std::mt19937 rng(4096);
  for (int k = 0; k < 25; ++k) {
    Interface i = random_interface(rng, "M");
    bdd::Manager m;
    VarTable t(m);
    SymbolicInterface si = compile(i, t);
    std::vector<int> allowed = si.all_bits(false);
    for (int b : si.all_bits(true)) allowed.push_back(b);
    std::sort(allowed.begin(), allowed.end());
    auto confined = [&](bdd::Ref r) {
      for (int b : m.support(r))
        if (!std::binary_search(allowed.begin(), allowed.end(), b))
          return false;
      return true;
    };
    for (const auto& [a, rel] : si.rho_out) CHECK(confined(rel));
    for (const auto& [a, rel] : si.rho_in) CHECK(confined(rel));
    CHECK(confined(si.init));
  }
}

TEST_CASE("symbolic and explicit semantics agree on random interfaces") {
  std::mt19937 rng(77001);
  for (int k = 0; k < 30; ++k) {
    Interface i = random_interface(rng, "M");
    check_agreement(i);
  }
}

TEST_CASE("per-command slices agree with the explicit oracle") {
  std::mt19937 rng(55);
  for (int k = 0; k < 10; ++k) {
    Interface i = random_interface(rng, "M");
    for (std::size_t ai = 0; ai < i.actions.size(); ++ai) {
      for (std::size_t ci = 0; ci < i.actions[ai].out_cmds.size(); ++ci) {
        Interface slice = i;
        slice.actions[ai].out_cmds = {i.actions[ai].out_cmds[ci]};
        slice.actions[ai].in_cmds.clear();
        check_agreement(slice);
      }
    }
  }
}
