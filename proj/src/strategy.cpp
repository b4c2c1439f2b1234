#include "abalearn/strategy.hpp"

#include <algorithm>

#include "abalearn/error.hpp"

namespace abalearn {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Solution: return "solution";
    case Outcome::NonIntensionalSolution: return "non-intensional-solution";
    case Outcome::Failed: return "failed";
  }
  return "unknown";
}

bool entails(const AbaFramework& f, const std::vector<Atom>& pos, const std::vector<Atom>& neg,
             Reasoner& reasoner, const EncodingConfig& cfg) {
  auto c = reasoner.cautious(encode_base(f, cfg));
  if (!c) return false;
  return std::all_of(pos.begin(), pos.end(), [&](const Atom& e) { return c->count(e) > 0; }) &&
         std::none_of(neg.begin(), neg.end(), [&](const Atom& e) { return c->count(e) > 0; });
}

std::vector<Atom> contrary_facts(const AbaFramework& f, const std::vector<Atom>& pos,
                                 const std::vector<Atom>& neg, const AssumptionSchema& alpha,
                                 Reasoner& reasoner, const EncodingConfig& cfg) {
  auto c = reasoner.cautious(encode_plus(f, pos, neg, {alpha.predicate}, cfg));
  std::vector<Atom> out;
  if (!c) return out;
  for (const auto& a : *c) {
    if (a.predicate == alpha.contrary) out.push_back(a);
  }
  return out;
}

std::vector<RuleId> subsumption_sweep(AbaFramework& f, const std::vector<Atom>& pos,
                                      const std::vector<Atom>& neg, Reasoner& reasoner,
                                      const EncodingConfig& cfg, LearnTrace* trace) {
  std::vector<RuleId> facts;
  for (const auto& r : f.rules()) {
    if (r.is_learnt() && fact_atom(r)) facts.push_back(r.id);
  }
  std::sort(facts.begin(), facts.end());
  std::vector<RuleId> deleted;
  for (RuleId id : facts) {
    const Rule before = *f.find_rule(id);
    AbaFramework trial = f;
    if (!subsumption(trial, id, reasoner, cfg)) continue;
    if (!entails(trial, pos, neg, reasoner, cfg)) continue;
    f = std::move(trial);
    deleted.push_back(id);
    if (trace) {
      trace->push_back({StepKind::Subsumption, {before}, {}, std::nullopt,
                        to_string(*fact_atom(before)) + " is a cautious consequence without it"});
    }
  }
  return deleted;
}

namespace {

void learn_fact(AbaFramework& f, const Atom& a, const std::string& evidence, LearnTrace& trace) {
  if (auto id = rote_learn(f, a)) {
    trace.push_back({StepKind::RoteLearning, {}, {*f.find_rule(*id)}, std::nullopt, evidence});
  }
}

std::optional<RuleId> oldest_non_intensional(const AbaFramework& f) {
  std::optional<RuleId> best;
  for (const auto& r : f.rules()) {
    if (r.is_learnt() && !is_intensional(r) && (!best || r.id < *best)) best = r.id;
  }
  return best;
}

bool all_learnt_intensional(const AbaFramework& f) {
  return std::all_of(f.rules().begin(), f.rules().end(),
                     [](const Rule& r) { return !r.is_learnt() || is_intensional(r); });
}

std::string id_list(const std::vector<FoldStep>& steps) {
  std::string s;
  for (const auto& st : steps) {
    if (!s.empty()) s += ',';
    s += std::to_string(st.folding_rule);
  }
  return s;
}

}  // namespace

std::optional<std::string> role_procedure(const LearningProblem& problem, AbaFramework& f,
                                          const StrategyConfig& cfg, Reasoner& reasoner, LearnTrace& trace) {
  const auto& enc = cfg.encoding;
  auto star = reasoner.cautious(encode_star(f, problem.pos, problem.neg, all_assumptions(f), enc));
  if (!star) return "the rote-learning program has no answer set";
  auto base = reasoner.cautious(encode_base(f, enc));

  for (const auto& a : *star) {
    if (!f.is_contrary(a.predicate) || (base && base->count(a))) continue;
    learn_fact(f, a, to_string(a) + " holds in every answer set of the example-guessing program", trace);
  }

  auto now = reasoner.cautious(encode_base(f, enc));
  for (const auto& e : problem.pos) {
    if (now && now->count(e)) continue;
    learn_fact(f, e, "positive example " + to_string(e) + " is not yet entailed", trace);
  }

  if (!entails(f, problem.pos, problem.neg, reasoner, enc)) {
    return "the rote-learnt framework does not entail the examples";
  }
  return std::nullopt;
}

LearnResult gen_procedure(const LearningProblem& problem, AbaFramework f, const StrategyConfig& cfg,
                          Reasoner& reasoner, LearnTrace trace) {
  const auto& enc = cfg.encoding;
  const auto& pos = problem.pos;
  const auto& neg = problem.neg;
  auto finish = [&](Outcome outcome, std::string message) {
    LearnResult r;
    r.intensional = all_learnt_intensional(f);
    r.framework = std::move(f);
    r.trace = std::move(trace);
    r.outcome = outcome;
    r.message = std::move(message);
    return r;
  };

  for (std::size_t iteration = 0;; ++iteration) {
    auto target = oldest_non_intensional(f);
    if (!target) return finish(Outcome::Solution, "");
    if (iteration == cfg.max_gen_iterations) {
      return finish(Outcome::Failed, "generalisation did not finish within " +
                                         std::to_string(cfg.max_gen_iterations) + " iterations");
    }

    const Rule rho = *f.find_rule(*target);
    auto keeps_entailment = [&](const Rule& candidate) {
      AbaFramework g = f;
      g.replace_rule(rho.id, candidate);
      return entails(g, pos, neg, reasoner, enc);
    };
    auto folded = fold_all(f, rho, cfg.fold_bound, keeps_entailment);
    if (!folded) {
      return finish(Outcome::NonIntensionalSolution, "no folding generalises " + to_string(rho));
    }

    const RuleId folded_id = f.replace_rule(rho.id, folded->rule);
    trace.push_back({StepKind::Folding, {rho}, {*f.find_rule(folded_id)}, std::nullopt,
                     std::to_string(folded->steps.size()) + " fold step(s) using rules " + id_list(folded->steps)});

    if (!entails(f, pos, neg, reasoner, enc)) {
      const Rule before = *f.find_rule(folded_id);
      AssumptionSchema alpha = assumption_introduction(f, folded_id);
      trace.push_back({StepKind::AssumptionIntroduction, {before}, {f.rules().back()}, alpha,
                       "folded rule no longer entails the examples"});
      for (const auto& c : contrary_facts(f, pos, neg, alpha, reasoner, enc)) {
        learn_fact(f, c, to_string(c) + " holds in every answer set with " + alpha.predicate + " open", trace);
      }
      if (!entails(f, pos, neg, reasoner, enc)) {
        return finish(Outcome::Failed, "exceptions for " + alpha.predicate + " do not restore entailment");
      }
    }
    subsumption_sweep(f, pos, neg, reasoner, enc, &trace);
  }
}

LearnResult learn(const LearningProblem& problem, const StrategyConfig& cfg, Reasoner& reasoner) {
  if (cfg.fold_bound == 0 || cfg.enum_limit == 0 || cfg.max_gen_iterations == 0) {
    throw std::invalid_argument("strategy bounds must be at least 1");
  }
  auto violations = validate(problem);
  if (!violations.empty()) {
    throw ValidationFailed("invalid learning problem: " + violations.front().message + " [" +
                           violations.front().subject + "]");
  }
  AbaFramework f = problem.framework;
  LearnTrace trace;
  if (auto failure = role_procedure(problem, f, cfg, reasoner, trace)) {
    LearnResult r;
    r.framework = std::move(f);
    r.trace = std::move(trace);
    r.outcome = Outcome::Failed;
    r.message = *failure;
    r.intensional = all_learnt_intensional(r.framework);
    return r;
  }
  return gen_procedure(problem, std::move(f), cfg, reasoner, std::move(trace));
}

LearnResult learn(const LearningProblem& problem, const StrategyConfig& cfg) {
  EmbeddedReasoner reasoner(cfg.enum_limit);
  return learn(problem, cfg, reasoner);
}

}  // namespace abalearn
