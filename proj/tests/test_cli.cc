#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "sic/ast.hh"
#include "sic/model.hh"

using nlohmann::json;
using namespace sic;

namespace {

const std::string kCli = SIC_CLI_PATH;
const std::string kCorpus = SIC_CORPUS_DIR;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  std::string cmd =
      kCli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  std::string out;
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  int status = pclose(f);
  RunResult r;
  r.code = WEXITSTATUS(status);
  r.out = out;
  return r;
}

std::string corpus(const std::string& name) { return kCorpus + "/" + name; }

// Parses --json output and checks the envelope every subcommand shares.
json verdict_object(const std::string& text) {
  json j = json::parse(text);
  REQUIRE(j.contains("verdict"));
  REQUIRE(j["verdict"].is_string());
  REQUIRE(j.contains("stats"));
  REQUIRE(j["stats"].is_object());
  REQUIRE(j["stats"].contains("nodes"));
  REQUIRE(j["stats"].contains("iterations"));
  REQUIRE(j["stats"].contains("time_ms"));
  CHECK(j["stats"]["nodes"].is_number_unsigned());
  CHECK(j["stats"]["iterations"].is_number());
  CHECK(j["stats"]["time_ms"].is_number());
  return j;
}

std::string normalized(std::string text) {
  json j = json::parse(text);
  j["stats"]["time_ms"] = 0;
  return j.dump();
}

}  // namespace

TEST_CASE("compose reports the compatible pair with its composite") {
  RunResult r = run("compose " + corpus("fire.si") + " -m Fire -m Guard");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "COMPATIBLE\n"
        "module Fire_Guard:\n"
        "  var s: [0..1]\n"
        "  global var alarm: bool\n"
        "  var seen: bool\n"
        "  output fire {\n"
        "    s = 0 ==> s' := 1, alarm' := true, seen' := true;\n"
        "  }\n"
        "  input fire {\n"
        "    s = 0 & alarm' = true ==> seen' := true;\n"
        "    s = 1 & alarm' = true ==> seen' := true;\n"
        "  }\n"
        "  init: s = 0 & (alarm = false & seen = false)\n");
}

TEST_CASE("compose -o writes a loadable module and stays quiet") {
  std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                           : "/tmp") +
                         "/sic_cli_composite.si";
  std::remove(out_path.c_str());
  RunResult r = run("compose " + corpus("fire.si") + " -m Fire -m Guard -o " +
                    out_path);
  CHECK(r.code == 0);
  CHECK(r.out == "COMPATIBLE\n");

  FILE* f = std::fopen(out_path.c_str(), "rb");
  REQUIRE(f);
  char buf[8192];
  std::size_t n = fread(buf, 1, sizeof buf, f);
  std::fclose(f);
  std::string text(buf, n);
  auto mods = parse(text, out_path);
  REQUIRE(mods.size() == 1);
  CHECK(mods[0].name == "Fire_Guard");
  CHECK_NOTHROW(validate(mods[0]));
  std::remove(out_path.c_str());
}

TEST_CASE("compose prints the refusal witness on the incompatible pair") {
  RunResult r = run("compose " + corpus("fire_bad.si") + " -m Fire -m Picky");
  CHECK(r.code == 1);
  CHECK(r.out ==
        "INCOMPATIBLE\n"
        "init: s=0 alarm=false seen=false\n"
        "incompatible: 'Fire' can emit 'fire' with an update the other side "
        "refuses\n");
}

TEST_CASE("refine verdicts cover all four counterexample shapes") {
  CHECK(run("refine " + corpus("fire.si") + " -m Fire -m Fire").code == 0);

  RunResult ok =
      run("refine " + corpus("refine.si") + " -m MoreInputs -m Base");
  CHECK(ok.code == 0);
  CHECK(ok.out == "REFINES\n");

  CHECK(run("refine " + corpus("refine.si") + " -m FewerOutputs -m Base")
            .code == 0);

  RunResult gap = run("refine " + corpus("refine.si") + " -m Base -m MoreInputs");
  CHECK(gap.code == 1);
  CHECK(gap.out ==
        "DOES-NOT-REFINE\n"
        "condition: alphabet('nudge')\n"
        "input 'nudge' of 'MoreInputs' is missing from 'Base'\n");

  RunResult out_gap =
      run("refine " + corpus("refine.si") + " -m Base -m FewerOutputs");
  CHECK(out_gap.code == 1);
  CHECK(out_gap.out ==
        "DOES-NOT-REFINE\n"
        "condition: alphabet('go')\n"
        "output 'go' of 'Base' is not allowed by 'FewerOutputs'\n");

  RunResult sem = run("refine " + corpus("refine.si") + " -m Wrong -m Base");
  CHECK(sem.code == 1);
  CHECK(sem.out ==
        "DOES-NOT-REFINE\n"
        "condition: InputOk('ack')\n"
        "P state: done=false\n"
        "Q state: done=false\n"
        "globals: busy=false\n");
}

TEST_CASE("check separates the optimistic and pessimistic verdicts") {
  RunResult opt = run("check " + corpus("fire.si") +
                      " -m Guard --invariant \"!seen\" --mode optimistic");
  CHECK(opt.code == 0);
  CHECK(opt.out == "SAFE\nwinning states: 2\n");

  RunResult pes = run("check " + corpus("fire.si") +
                      " -m Guard --invariant \"!seen\" --mode pessimistic");
  CHECK(pes.code == 1);
  CHECK(pes.out ==
        "UNSAFE\n"
        "init: seen=false alarm=false\n"
        "fire?: seen=true alarm=true\n");

  // The default mode is pessimistic.
  RunResult def =
      run("check " + corpus("fire.si") + " -m Guard --invariant \"!seen\"");
  CHECK(def.code == 1);
  CHECK(def.out == pes.out);

  RunResult fire = run("check " + corpus("fire.si") +
                       " -m Fire --invariant \"s = 0 | alarm = true\"");
  CHECK(fire.code == 0);
  CHECK(fire.out == "SAFE\n");
}

TEST_CASE("wf splits diagnostics from validity") {
  RunResult ok = run("wf " + corpus("fire.si") + " -m Fire");
  CHECK(ok.code == 0);
  CHECK(ok.out == "WELL-FORMED\n");

  RunResult bad = run("wf " + corpus("broken.si") + " -m Broken");
  CHECK(bad.code == 1);
  CHECK(bad.out == "ILL-FORMED\n" + corpus("broken.si") +
                       ":4:18: error: initial condition is unsatisfiable "
                       "over the declared domains\n");
}

TEST_CASE("info lists every module in the file") {
  RunResult r = run("info " + corpus("trio.si"));
  CHECK(r.code == 0);
  CHECK(r.out ==
        "module Source\n"
        "  vars: sent:bool data:[0..3](global)\n"
        "  inputs: (none)\n"
        "  outputs: put\n"
        "  states: 8\n"
        "module Relay\n"
        "  vars: got:bool data:[0..3](global) out:[0..3](global)\n"
        "  inputs: put\n"
        "  outputs: fwd\n"
        "  states: 32\n"
        "module Sink\n"
        "  vars: seen:[0..3] out:[0..3](global)\n"
        "  inputs: fwd\n"
        "  outputs: (none)\n"
        "  states: 16\n");
}

TEST_CASE("usage and input problems exit with 2") {
  CHECK(run("compose missing.si -m A -m B").code == 2);
  CHECK(run("compose " + corpus("fire.si") + " -m Fire -m Nope").code == 2);
  CHECK(run("compose " + corpus("fire.si") + " -m Fire -m Fire").code == 2);
  CHECK(run("compose " + corpus("broken.si") + " -m Broken -m Broken").code ==
        2);
  CHECK(run("refine " + corpus("broken.si") + " -m Broken -m Broken").code ==
        2);
  CHECK(run("check " + corpus("fire.si") + " -m Guard --invariant \"seen <\"")
            .code == 2);
  CHECK(run("check " + corpus("fire.si") +
            " -m Guard --invariant \"!seen\" --mode silly")
            .code == 2);
  CHECK(run("check " + corpus("fire.si") + " -m Guard --invariant \"s = 0\"")
            .code == 2);  // s is not Guard's variable
  CHECK(run("nope").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);

  RunResult diag =
      run("refine " + corpus("fire_bad.si") + " -m Fire -m Guard", true);
  CHECK(diag.code == 2);
  CHECK(diag.out.find("no module 'Guard'") != std::string::npos);
}

TEST_CASE("json verdicts carry the envelope on every subcommand") {
  json j = verdict_object(
      run("--json compose " + corpus("fire.si") + " -m Fire -m Guard").out);
  CHECK(j["verdict"] == "COMPATIBLE");
  REQUIRE(j.contains("composite"));
  auto mods = parse(j["composite"].get<std::string>(), "<json>");
  CHECK(mods.size() == 1);

  j = verdict_object(
      run("--json compose " + corpus("fire_bad.si") + " -m Fire -m Picky")
          .out);
  CHECK(j["verdict"] == "INCOMPATIBLE");
  REQUIRE(j.contains("witness"));
  CHECK(j["witness"] == "init: s=0 alarm=false seen=false\n");
  CHECK(j["action"] == "fire");
  CHECK(j["emitter"] == "Fire");

  j = verdict_object(
      run("--json refine " + corpus("refine.si") + " -m MoreInputs -m Base")
          .out);
  CHECK(j["verdict"] == "REFINES");

  j = verdict_object(
      run("--json refine " + corpus("refine.si") + " -m Wrong -m Base").out);
  CHECK(j["verdict"] == "DOES-NOT-REFINE");
  CHECK(j["condition"] == "InputOk('ack')");
  CHECK(j["action"] == "ack");
  CHECK(j["p_state"] == "done=false");
  CHECK(j["q_state"] == "done=false");
  CHECK(j["globals"] == "busy=false");

  j = verdict_object(run("--json check " + corpus("fire.si") +
                         " -m Guard --invariant \"!seen\" --mode optimistic")
                         .out);
  CHECK(j["verdict"] == "SAFE");
  CHECK(j["winning"] == 2);

  j = verdict_object(run("--json check " + corpus("fire.si") +
                         " -m Guard --invariant \"!seen\" --mode pessimistic")
                         .out);
  CHECK(j["verdict"] == "UNSAFE");
  REQUIRE(j.contains("witness"));

  j = verdict_object(run("--json wf " + corpus("fire.si") + " -m Fire").out);
  CHECK(j["verdict"] == "WELL-FORMED");
  CHECK(j["diagnostics"].is_array());

  j = verdict_object(
      run("--json wf " + corpus("broken.si") + " -m Broken").out);
  CHECK(j["verdict"] == "ILL-FORMED");
  CHECK(j["diagnostics"].size() == 1);

  j = verdict_object(run("--json info " + corpus("trio.si")).out);
  CHECK(j["verdict"] == "OK");
  REQUIRE(j["modules"].is_array());
  CHECK(j["modules"].size() == 3);
  CHECK(j["modules"][0]["name"] == "Source");
  CHECK(j["modules"][0]["states"] == 8);
}

TEST_CASE("output is deterministic across repeated runs") {
  std::vector<std::string> cmds = {
      "compose " + corpus("fire.si") + " -m Fire -m Guard",
      "compose " + corpus("fire_bad.si") + " -m Fire -m Picky",
      "compose " + corpus("interleave.si") + " -m Left -m Right",
      "compose " + corpus("pingpong.si") + " -m Ping -m Pong",
      "compose " + corpus("counter.si") + " -m Counter -m Probe",
      "refine " + corpus("refine.si") + " -m Wrong -m Base",
      "check " + corpus("fire.si") + " -m Guard --invariant \"!seen\"",
      "info " + corpus("trio.si"),
  };
  for (const std::string& cmd : cmds) {
    CAPTURE(cmd);
    RunResult a = run(cmd), b = run(cmd);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    RunResult ja = run("--json " + cmd), jb = run("--json " + cmd);
    CHECK(ja.code == jb.code);
    CHECK(normalized(ja.out) == normalized(jb.out));
    verdict_object(ja.out);
  }
}
