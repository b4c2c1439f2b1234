// Acceptance checks for the learning pipeline. Prints one PASS/FAIL line per
// criterion and exits non-zero if any fails.

#include <chrono>
#include <functional>
#include <iostream>

#include "abalearn/strategy.hpp"
#include "fixtures.hpp"
#include "properties.hpp"

using namespace abalearn;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join(const std::multiset<std::string>& rules) {
  std::string s;
  for (const auto& r : rules) s += (s.empty() ? "" : " ") + r;
  return s;
}

StrategyConfig config_for(const ProblemDocument& d, DomMode mode) {
  StrategyConfig cfg;
  cfg.encoding.guards = d.guards;
  cfg.encoding.dom_mode = mode;
  return cfg;
}

const std::multiset<std::string>& expected_rules() {
  static const auto rules = fixtures::canonical_set(
      {"innocent(X) :- away(X).", "guilty(X) :- witness_con(X,Y), person(Y), alpha1(X,Y).",
       "c_alpha1(X,Y) :- defendant(X), liar(Y)."},
      "assumption alpha1/2 contrary c_alpha1.");
  return rules;
}

Check golden_run(DomMode mode) {
  Check c;
  auto d = fixtures::load("innocent.aba");
  const auto t0 = Clock::now();
  auto res = learn(d.problem, config_for(d, mode));
  const double elapsed = seconds_since(t0);
  c.require(res.outcome == Outcome::Solution, std::string("outcome ") + to_string(res.outcome) + ": " + res.message);
  auto got = fixtures::learnt_rules(res.framework, d.problem.framework);
  c.require(got == expected_rules(), "learnt rules " + join(got));
  c.require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  if (c.ok) c.detail = "3 rules, " + std::to_string(elapsed) + " s";
  return c;
}

// Framework state right after the first trace entry of `kind` that follows
// an entry of kind `after` (or the start).
std::optional<AbaFramework> state_after(const AbaFramework& background, const LearnTrace& trace, StepKind after,
                                        StepKind kind, const TraceEntry** entry = nullptr) {
  bool armed = false;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].kind == after) armed = true;
    if (armed && trace[i].kind == kind) {
      if (entry) *entry = &trace[i];
      return replay(background, LearnTrace(trace.begin(), trace.begin() + static_cast<long>(i) + 1));
    }
  }
  return std::nullopt;
}

Check role_intermediate() {
  Check c;
  auto d = fixtures::load("innocent.aba");
  auto f = d.problem.framework;
  EmbeddedReasoner reasoner;
  LearnTrace trace;
  auto failure = role_procedure(d.problem, f, config_for(d, DomMode::BodyCover), reasoner, trace);
  c.require(!failure, failure.value_or(""));
  std::multiset<std::string> got, want;
  for (const auto& r : f.rules()) got.insert(to_string(r));
  for (const auto& r : d.problem.framework.rules()) want.insert(to_string(r));
  for (const char* t : {"innocent(X) :- X=bob.", "guilty(X) :- X=david.", "guilty(X) :- X=john."}) want.insert(t);
  c.require(got == want, "framework after rote learning differs");
  return c;
}

Check assumption_intermediate() {
  Check c;
  auto d = fixtures::load("innocent.aba");
  auto cfg = config_for(d, DomMode::BodyCover);
  auto res = learn(d.problem, cfg);
  const TraceEntry* intro = nullptr;
  auto introduced = state_after(d.problem.framework, res.trace, StepKind::AssumptionIntroduction,
                        StepKind::AssumptionIntroduction, &intro);
  c.require(introduced.has_value() && intro && intro->assumption, "no assumption introduction in the trace");
  if (!c.ok) return c;
  EmbeddedReasoner reasoner;
  auto facts = contrary_facts(*introduced, d.problem.pos, d.problem.neg, *intro->assumption, reasoner, cfg.encoding);
  const Atom want(intro->assumption->contrary, {Term::constant("mary"), Term::constant("alex")});
  c.require(facts == std::vector<Atom>{want}, std::to_string(facts.size()) + " contrary facts");
  if (c.ok) c.detail = to_string(want);
  return c;
}

Check subsumption_intermediate() {
  Check c;
  auto d = fixtures::load("innocent.aba");
  auto cfg = config_for(d, DomMode::BodyCover);
  auto res = learn(d.problem, cfg);
  auto after_rote = state_after(d.problem.framework, res.trace, StepKind::AssumptionIntroduction, StepKind::RoteLearning);
  c.require(after_rote.has_value(), "no rote learning after assumption introduction");
  if (!c.ok) return c;
  const AbaFramework before = *after_rote;
  EmbeddedReasoner reasoner;
  auto deleted = subsumption_sweep(*after_rote, d.problem.pos, d.problem.neg, reasoner, cfg.encoding);
  c.require(deleted.size() == 1, std::to_string(deleted.size()) + " facts deleted");
  if (!c.ok) return c;
  const Rule* r = before.find_rule(deleted[0]);
  c.require(r && to_string(*r) == "guilty(X) :- X=john.", "deleted the wrong fact");
  if (c.ok) c.detail = to_string(*r);
  return c;
}

Check semantics() {
  Check c;
  auto d = fixtures::load("witness.aba");
  auto cautious = EmbeddedReasoner().cautious(encode_base(d.problem.framework));
  c.require(cautious.has_value(), "unsatisfiable");
  if (!c.ok) return c;
  for (const char* a : {"guilty(mary)", "innocent(alex)"}) c.require(cautious->count(fixtures::atom(a)) > 0, a);
  return c;
}

constexpr unsigned kFrameworkSeed = 1234;
constexpr int kFrameworks = 250;

Check oracle_equivalence() {
  Check c;
  std::mt19937 rng(kFrameworkSeed);
  const auto t0 = Clock::now();
  int compared = 0, mismatches = 0;
  while (compared < kFrameworks) {
    AbaFramework f = properties::random_flat_framework(rng);
    if (!validate(f).empty()) continue;
    ++compared;
    if (!properties::compare_with_oracle(f).agree()) ++mismatches;
  }
  const double elapsed = seconds_since(t0);
  c.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  c.require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  if (c.ok) c.detail = std::to_string(compared) + " frameworks, " + std::to_string(elapsed) + " s";
  return c;
}

constexpr unsigned kProgramSeed = 987;
constexpr int kPrograms = 600;

Check brute_force_oracle() {
  Check c;
  std::mt19937 rng(kProgramSeed);
  int mismatches = 0;
  for (int i = 0; i < kPrograms; ++i) {
    GroundProgram gp = properties::random_program(rng);
    if (answer_sets(gp).answer_sets != properties::brute_force(gp)) ++mismatches;
  }
  c.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  if (c.ok) c.detail = std::to_string(kPrograms) + " programs";
  return c;
}

// Every answer set must equal the least model of its reduct, and no answer
// set may be a proper subset of another.
bool stable_and_minimal(const GroundProgram& gp) {
  const auto rep = answer_sets(gp);
  for (const auto& i : rep.answer_sets) {
    if (least_model(reduct(gp, i)) != i) return false;
    for (const auto& j : rep.answer_sets) {
      if (i != j && i.subset_of(j)) return false;
    }
  }
  return true;
}

GroundProgram grounded(const std::vector<NormalRule>& program) { return ground(program, constants_of(program)); }

Check stability_invariants() {
  Check c;
  std::size_t programs = 0;
  auto check = [&](const GroundProgram& gp, const std::string& what) {
    ++programs;
    c.require(stable_and_minimal(gp), what);
  };
  std::mt19937 prog_rng(kProgramSeed);
  for (int i = 0; i < kPrograms; ++i) check(properties::random_program(prog_rng), "random program " + std::to_string(i));
  std::mt19937 fw_rng(kFrameworkSeed);
  for (int n = 0; n < kFrameworks;) {
    AbaFramework f = properties::random_flat_framework(fw_rng);
    if (!validate(f).empty()) continue;
    ++n;
    check(grounded(encode_base(f)), "random framework " + std::to_string(n));
  }
  for (const char* name : {"innocent.aba", "witness.aba"}) {
    auto d = fixtures::load(name);
    const auto& p = d.problem;
    for (auto mode : {DomMode::BodyCover, DomMode::GlobalDom}) {
      EncodingConfig cfg = config_for(d, mode).encoding;
      for (auto v : {Variant::Base, Variant::Plus, Variant::Star}) {
        check(grounded(encode(v, p.framework, p.pos, p.neg, all_assumptions(p.framework), cfg)), name);
      }
    }
  }
  if (c.ok) c.detail = std::to_string(programs) + " programs";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"golden run on the innocent/guilty problem", [] { return golden_run(DomMode::BodyCover); }},
      {"rote learning yields the three expected facts", role_intermediate},
      {"contrary facts after assumption introduction", assumption_intermediate},
      {"subsumption deletes exactly guilty(X) :- X=john", subsumption_intermediate},
      {"cautious consequences of the witness framework", semantics},
      {"stable extensions match encoded answer sets", oracle_equivalence},
      {"answer sets match brute force", brute_force_oracle},
      {"answer sets are stable and minimal", stability_invariants},
      {"golden run with a global domain guard", [] { return golden_run(DomMode::GlobalDom); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failures += c.ok ? 0 : 1;
    std::cout << "criterion " << i + 1 << ": " << (c.ok ? "PASS" : "FAIL") << " - " << criteria[i].first;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
