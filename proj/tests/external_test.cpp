#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "abalearn/encode.hpp"
#include "abalearn/error.hpp"
#include "abalearn/external.hpp"
#include "abalearn/strategy.hpp"
#include "fixtures.hpp"

using namespace abalearn;
using fixtures::atom;

namespace {

// The project's own `solve` subcommand speaks the expected output protocol,
// so it stands in for an external solver.
std::string self_solver() { return std::string(ABALEARN_EXE) + " solve {file}"; }

std::string script(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / (name + "-" + std::to_string(::getpid()) + ".sh");
  std::ofstream(path) << "#!/bin/sh\n" << body;
  std::filesystem::permissions(path, std::filesystem::perms::owner_all);
  return path.string();
}

SymbolicReport embedded(const std::vector<NormalRule>& program) {
  GroundProgram gp = ground(program, constants_of(program));
  return symbolic(gp, answer_sets(gp, kDefaultEnumLimit));
}

std::vector<NormalRule> lp(const std::string& text) {
  auto r = parse_lp(text);
  EXPECT_TRUE(r.ok()) << text;
  return r.program;
}

bool have_clingo() { return std::system("command -v clingo >/dev/null 2>&1") == 0; }

}  // namespace

TEST(ParseSolverOutput, AnswersAndCautious) {
  auto rep = parse_solver_output("clingo version 5\nReading\nAnswer: 1\np r\nAnswer: 2\nq(a,b) r\nSATISFIABLE\n");
  ASSERT_EQ(rep.answer_sets.size(), 2u);
  EXPECT_TRUE(rep.satisfiable);
  EXPECT_EQ(*rep.cautious, std::set<Atom>{Atom("r")});
  EXPECT_TRUE(rep.answer_sets[1].count(atom("q(a,b)")));
}

TEST(ParseSolverOutput, EmptyModelAndUnsat) {
  auto empty = parse_solver_output("Answer: 1\n\nSATISFIABLE\n");
  ASSERT_EQ(empty.answer_sets.size(), 1u);
  EXPECT_TRUE(empty.answer_sets[0].empty());
  auto unsat = parse_solver_output("UNSATISFIABLE\n");
  EXPECT_FALSE(unsat.satisfiable);
  EXPECT_FALSE(unsat.cautious);
}

TEST(ParseSolverOutput, GarbageKeepsRawOutput) {
  try {
    parse_solver_output("segmentation fault\n");
    FAIL() << "expected an exception";
  } catch (const SolverOutputUnparseable& e) {
    EXPECT_EQ(e.raw_output, "segmentation fault\n");
  }
  EXPECT_THROW(parse_solver_output("Answer: 1\np(\n"), SolverOutputUnparseable);
  EXPECT_THROW(parse_solver_output("Answer: 1\np\nUNSATISFIABLE\n"), SolverOutputUnparseable);
}

TEST(ExternalSolve, SingleModel) {
  auto rep = external_solve("p :- not q.\n", self_solver());
  ASSERT_EQ(rep.answer_sets.size(), 1u);
  EXPECT_EQ(rep.answer_sets[0], std::set<Atom>{Atom("p")});
}

TEST(ExternalSolve, MatchesEmbeddedOnTestPrograms) {
  auto d = fixtures::load("innocent.aba");
  EncodingConfig cfg;
  cfg.guards = d.guards;
  const auto& p = d.problem;
  std::vector<std::vector<NormalRule>> programs = {
      lp(fixtures::read_text(fixtures::data_path("even_loop.lp"))),
      lp("p :- not p.\n"),
      lp("p.\n:- p.\n"),
      encode_star(p.framework, p.pos, p.neg, all_assumptions(p.framework), cfg),
  };
  for (const auto& prog : programs) {
    EXPECT_EQ(external_solve(to_asp_text(prog), self_solver()), embedded(prog)) << to_asp_text(prog);
  }
}

TEST(ExternalSolve, RunningExampleCautiousSet) {
  auto d = fixtures::load("innocent.aba");
  EncodingConfig cfg;
  cfg.guards = d.guards;
  const auto& p = d.problem;
  auto rep = external_solve(to_asp_text(encode_star(p.framework, p.pos, p.neg, all_assumptions(p.framework), cfg)),
                            self_solver());
  ASSERT_TRUE(rep.cautious);
  EXPECT_TRUE(rep.cautious->count(atom("guilty(david)")));
}

TEST(ExternalSolve, MissingCommandFailsToSpawn) {
  EXPECT_THROW(external_solve("p.\n", "/nonexistent/solver-binary {file}"), SolverSpawnFailed);
  EXPECT_THROW(external_solve("p.\n", "echo no placeholder"), SolverSpawnFailed);
}

TEST(ExternalSolve, MockScriptOutputIsParsed) {
  auto ok = script("mock-ok", "test -s \"$1\" || exit 3\necho 'Answer: 1'\necho 'p q(a)'\necho SATISFIABLE\n");
  auto rep = external_solve("p.\n", ok + " {file}");
  EXPECT_EQ(rep.answer_sets, (std::vector<std::set<Atom>>{{Atom("p"), atom("q(a)")}}));
  auto bad = script("mock-bad", "echo 'oops'\n");
  EXPECT_THROW(external_solve("p.\n", bad + " {file}"), SolverOutputUnparseable);
  std::filesystem::remove(ok);
  std::filesystem::remove(bad);
}

TEST(ExternalReasoner, DrivesTheLearner) {
  auto d = fixtures::load("innocent.aba");
  StrategyConfig cfg;
  cfg.encoding.guards = d.guards;
  ExternalReasoner reasoner(self_solver());
  auto res = learn(d.problem, cfg, reasoner);
  EXPECT_EQ(res.outcome, Outcome::Solution);
  EXPECT_EQ(res.framework, learn(d.problem, cfg).framework);
}

TEST(Clingo, BackendEquivalence) {
  if (!have_clingo()) GTEST_SKIP() << "clingo not installed";
  for (const auto& text : {std::string("p :- not q.\nq :- not p.\n"), std::string("p :- not p.\n"),
                           fixtures::read_text(fixtures::data_path("even_loop.lp"))}) {
    auto prog = lp(text);
    auto ext = external_solve(to_asp_text(prog), "clingo 0 {file}");
    EXPECT_EQ(ext.answer_sets, embedded(prog).answer_sets) << text;
  }
}
