#include <gtest/gtest.h>

#include "abalearn/error.hpp"
#include "abalearn/strategy.hpp"
#include "abalearn/transform.hpp"
#include "fixtures.hpp"

using namespace abalearn;
using fixtures::atom;
using fixtures::rule;

namespace {

const char* kWithContraryFact = R"(
assumption a_1/2 contrary c_a_1.
guilty(X) :- X=john.  % learnt
innocent(X) :- X=bob.  % learnt
guilty(X) :- witness_con(X,Y), person(Y), a_1(X,Y).  % learnt
c_a_1(X,Y) :- X=mary, Y=alex.  % learnt
)";

ProblemDocument with_extra(const char* extra) {
  auto r = parse_problem(fixtures::read_text(fixtures::data_path("innocent.aba")) + extra);
  EXPECT_TRUE(r.ok());
  return r.document;
}

const Rule& find_text(const AbaFramework& f, const std::string& text) {
  for (const auto& r : f.rules()) {
    if (to_string(r) == text) return r;
  }
  throw std::runtime_error("no rule " + text);
}

EncodingConfig guards_of(const ProblemDocument& d) {
  EncodingConfig cfg;
  cfg.guards = d.guards;
  return cfg;
}

}  // namespace

TEST(RoteLearn, AddsFactInEqualityForm) {
  auto f = fixtures::load("innocent.aba").problem.framework;
  auto id = rote_learn(f, atom("guilty(david)"));
  ASSERT_TRUE(id.has_value());
  const Rule* r = f.find_rule(*id);
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(to_string(*r), "guilty(X) :- X=david.");
  EXPECT_TRUE(r->is_learnt());
}

TEST(RoteLearn, TwoArgumentFact) {
  AbaFramework f;
  auto id = rote_learn(f, atom("c_a(mary,alex)"));
  ASSERT_TRUE(id);
  EXPECT_EQ(to_string(*f.find_rule(*id)), "c_a(X,Y) :- X=mary, Y=alex.");
}

TEST(RoteLearn, DuplicateIsSuppressed) {
  auto f = fixtures::load("innocent.aba").problem.framework;
  ASSERT_TRUE(rote_learn(f, atom("guilty(david)")));
  const auto before = f;
  EXPECT_FALSE(rote_learn(f, atom("guilty(david)")));
  EXPECT_FALSE(rote_learn(f, atom("away(bob)")));
  EXPECT_EQ(f, before);
}

TEST(RoteLearn, AssumptionCannotBeAFact) {
  auto f = fixtures::load("innocent.aba").problem.framework;
  EXPECT_THROW(rote_learn(f, atom("not_guilty(bob)")), AssumptionAsFact);
}

TEST(Fold, SingleStepWithAFact) {
  auto f = fixtures::load("innocent.aba").problem.framework;
  Rule target = rule("innocent(X) :- X=bob.");
  Rule away = find_text(f, "away(bob).");
  auto step = match_fold(target, away);
  ASSERT_TRUE(step);
  EXPECT_EQ(to_string(fold(target, away, *step)), "innocent(X) :- away(X).");
}

TEST(Fold, TwoStepsIntroduceAVariable) {
  auto f = fixtures::load("innocent.aba").problem.framework;
  Rule target = rule("guilty(X) :- X=david.");
  Rule wc = find_text(f, "witness_con(david,carol).");
  auto s1 = match_fold(target, wc);
  ASSERT_TRUE(s1);
  Rule mid = fold(target, wc, *s1);
  EXPECT_EQ(to_string(mid), "guilty(X) :- Y=carol, witness_con(X,Y).");
  Rule person = find_text(f, "person(carol).");
  auto s2 = match_fold(mid, person);
  ASSERT_TRUE(s2);
  EXPECT_EQ(to_string(fold(mid, person, *s2)), "guilty(X) :- witness_con(X,Y), person(Y).");
}

TEST(Fold, RuleWithItselfSwapsBodyForHead) {
  Rule r = rule("p(X) :- q(X), r(X).");
  auto step = match_fold(r, r);
  ASSERT_TRUE(step);
  EXPECT_EQ(to_string(fold(r, r, *step)), "p(X) :- p(X).");
}

TEST(Fold, UnmatchedFoldingEqualitiesBecomeResidual) {
  Rule target = rule("innocent(X) :- X=bob.");
  Rule other = rule("away(carol).");
  auto step = match_fold(target, other);
  ASSERT_TRUE(step);
  EXPECT_TRUE(step->matched_eqs.empty());
  EXPECT_EQ(to_string(fold(target, other, *step)), "innocent(X) :- X=bob, Y=carol, away(Y).");
}

TEST(Fold, MismatchedStepIsRejected) {
  Rule target = rule("innocent(X) :- X=bob.");
  EXPECT_FALSE(match_fold(target, rule("s(X) :- t(X).")));
  Rule other = rule("away(carol).");
  FoldStep bogus;
  bogus.matched_eqs = {Equality("X", "carol")};
  EXPECT_THROW(fold(target, other, bogus), NoMatch);
}

TEST(Fold, AssumptionsAreCarriedOver) {
  Rule target = rule("p(X) :- X=a, q(X), b(X).", "assumption b/1 contrary cb.");
  Rule folding = rule("s(a).");
  auto step = match_fold(target, folding);
  ASSERT_TRUE(step);
  Rule out = fold(target, folding, *step);
  EXPECT_EQ(to_string(out), "p(X) :- q(X), s(X), b(X).");
  ASSERT_EQ(out.asms.size(), 1u);
}

TEST(FoldAll, AwayFoldsInOneStep) {
  auto f = fixtures::load("innocent.aba").problem.framework;
  auto id = rote_learn(f, atom("innocent(bob)"));
  auto res = fold_all(f, *f.find_rule(*id), 1);
  ASSERT_TRUE(res);
  EXPECT_EQ(to_string(res->rule), "innocent(X) :- away(X).");
  ASSERT_EQ(res->steps.size(), 1u);
  EXPECT_EQ(res->steps[0].folding_rule, 9u);
}

TEST(FoldAll, AcceptorSelectsAmongAlternatives) {
  auto d = with_extra(kWithContraryFact);
  const auto& f = d.problem.framework;
  const Rule& fact = find_text(f, "c_a_1(X,Y) :- X=mary, Y=alex.");

  auto first = fold_all(f, fact, 5);
  ASSERT_TRUE(first);
  EXPECT_EQ(to_string(first->rule), "c_a_1(X,Y) :- witness_con(X,Y).");

  auto not_witness = [](const Rule& r) { return r.atoms.front().predicate != "witness_con"; };
  auto chosen = fold_all(f, fact, 2, not_witness);
  ASSERT_TRUE(chosen);
  EXPECT_EQ(to_string(chosen->rule), "c_a_1(X,Y) :- defendant(X), liar(Y).");

  // With one alternative per step the acceptor is never satisfied; the
  // first intensional rule is the fallback.
  auto fallback = fold_all(f, fact, 1, not_witness);
  ASSERT_TRUE(fallback);
  EXPECT_EQ(to_string(fallback->rule), "c_a_1(X,Y) :- witness_con(X,Y).");
}

TEST(FoldAll, NoCandidatesMeansFailure) {
  AbaFramework f;
  auto id = rote_learn(f, atom("p(a)"));
  f.add_rule(rule("q(b)."));
  EXPECT_FALSE(fold_all(f, *f.find_rule(*id), 5));
}

TEST(FoldAll, ResultsAreSafe) {
  auto d = with_extra(kWithContraryFact);
  const auto& f = d.problem.framework;
  for (const auto& r : f.rules()) {
    if (!r.is_learnt() || is_intensional(r)) continue;
    for (std::size_t bound = 1; bound <= 5; ++bound) {
      auto res = fold_all(f, r, bound);
      if (!res) continue;
      EXPECT_TRUE(is_intensional(res->rule));
      auto body = body_vars(res->rule);
      for (const auto& v : vars(res->rule.head)) {
        EXPECT_NE(std::find(body.begin(), body.end(), v), body.end()) << to_string(res->rule);
      }
    }
  }
}

TEST(AssumptionIntroduction, AddsFreshAssumptionOverAllVariables) {
  auto d = fixtures::load("innocent.aba");
  auto& f = d.problem.framework;
  RuleId id = f.add_rule(rule("guilty(X) :- witness_con(X,Y), person(Y)."));
  auto schema = assumption_introduction(f, id);
  EXPECT_EQ(schema.arity, 2u);
  EXPECT_TRUE(f.is_assumption(schema.predicate));
  EXPECT_EQ(f.find_rule(id), nullptr);
  const Rule& last = f.rules().back();
  EXPECT_EQ(to_string(last), "guilty(X) :- witness_con(X,Y), person(Y), " + schema.predicate + "(X,Y).");
  ASSERT_EQ(last.asms.size(), 1u);
  EXPECT_TRUE(validate(f).empty());
}

TEST(AssumptionIntroduction, GroundFactGetsNullaryAssumption) {
  AbaFramework f;
  RuleId id = f.add_rule(rule("p(c)."));
  auto s = assumption_introduction(f, id);
  EXPECT_EQ(s.arity, 0u);
  EXPECT_EQ(to_string(f.rules().back()), "p(c) :- " + s.predicate + ".");
}

TEST(AssumptionIntroduction, NamesAreFresh) {
  AbaFramework f;
  f.add_assumption({"a_1", 0, "q"});
  RuleId r1 = f.add_rule(rule("p(c)."));
  RuleId r2 = f.add_rule(rule("s(c)."));
  auto s1 = assumption_introduction(f, r1);
  auto s2 = assumption_introduction(f, r2);
  EXPECT_NE(s1.predicate, s2.predicate);
  EXPECT_NE(s1.contrary, s2.contrary);
  EXPECT_NE(s1.predicate, "a_1");
  for (const auto& s : {s1, s2}) {
    EXPECT_EQ(std::count_if(f.assumptions().begin(), f.assumptions().end(),
                            [&](const AssumptionSchema& x) { return x.predicate == s.predicate; }),
              1);
  }
}

TEST(Subsumption, DerivableFactIsDeleted) {
  auto d = with_extra(kWithContraryFact);
  auto& f = d.problem.framework;
  EmbeddedReasoner reasoner;
  RuleId john = find_text(f, "guilty(X) :- X=john.").id;
  EXPECT_TRUE(subsumption(f, john, reasoner, guards_of(d)));
  EXPECT_EQ(f.find_rule(john), nullptr);
}

TEST(Subsumption, UnderivableFactsStay) {
  auto d = with_extra(kWithContraryFact);
  auto& f = d.problem.framework;
  EmbeddedReasoner reasoner;
  const auto before = f;
  for (const char* t : {"c_a_1(X,Y) :- X=mary, Y=alex.", "innocent(X) :- X=bob."}) {
    EXPECT_FALSE(subsumption(f, find_text(f, t).id, reasoner, guards_of(d))) << t;
  }
  EXPECT_EQ(f, before);
}

TEST(Subsumption, PredicateWithNoOtherDefinitionStays) {
  AbaFramework f;
  auto id = rote_learn(f, atom("fresh(a)"));
  f.add_rule(rule("q(a)."));
  EmbeddedReasoner reasoner;
  EXPECT_FALSE(subsumption(f, *id, reasoner));
}

TEST(Trace, ReplayReproducesTheLearntFramework) {
  auto d = fixtures::load("innocent.aba");
  StrategyConfig cfg;
  cfg.encoding.guards = d.guards;
  auto result = learn(d.problem, cfg);
  ASSERT_EQ(result.outcome, Outcome::Solution);
  EXPECT_EQ(replay(d.problem.framework, result.trace), result.framework);
  for (const auto& e : result.trace) {
    auto line = to_string(e);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(line.rfind(to_string(e.kind), 0), 0u) << line;
  }
}
