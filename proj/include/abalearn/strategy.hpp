#pragma once

// The learning strategy: rote learning of exceptions and examples, followed
// by generalisation of every learnt fact.

#include <string>
#include <vector>

#include "abalearn/encode.hpp"
#include "abalearn/model.hpp"
#include "abalearn/solve.hpp"
#include "abalearn/transform.hpp"

namespace abalearn {

struct StrategyConfig {
  std::size_t fold_bound = 5;
  std::size_t enum_limit = kDefaultEnumLimit;
  EncodingConfig encoding;
  std::size_t max_gen_iterations = 50;
};

enum class Outcome { Solution, NonIntensionalSolution, Failed };

const char* to_string(Outcome outcome);

struct LearnResult {
  AbaFramework framework;
  LearnTrace trace;
  bool intensional = false;
  Outcome outcome = Outcome::Failed;
  /// Human-readable reason for a non-Solution outcome.
  std::string message;
};

/// Existence, completeness and consistency under cautious consequences.
bool entails(const AbaFramework& f, const std::vector<Atom>& pos, const std::vector<Atom>& neg,
             Reasoner& reasoner, const EncodingConfig& cfg = {});

/// Contrary atoms of `alpha` that hold in every answer set of the problem
/// encoding with contrary guesses for `alpha` only, sorted.
std::vector<Atom> contrary_facts(const AbaFramework& f, const std::vector<Atom>& pos,
                                 const std::vector<Atom>& neg, const AssumptionSchema& alpha,
                                 Reasoner& reasoner, const EncodingConfig& cfg = {});

/// Applies Subsumption to every learnt fact of `f` in id order, keeping a
/// deletion only if the examples stay entailed. Appends one trace entry per
/// deletion when `trace` is given and returns the deleted ids.
std::vector<RuleId> subsumption_sweep(AbaFramework& f, const std::vector<Atom>& pos,
                                      const std::vector<Atom>& neg, Reasoner& reasoner,
                                      const EncodingConfig& cfg = {}, LearnTrace* trace = nullptr);

/// Rote learning phase. On success `f` entails the examples and the applied
/// steps are appended to `trace`; otherwise a failure message is returned.
std::optional<std::string> role_procedure(const LearningProblem& problem, AbaFramework& f,
                                          const StrategyConfig& cfg, Reasoner& reasoner, LearnTrace& trace);

/// Generalisation phase starting from the rote-learnt framework `f1`.
LearnResult gen_procedure(const LearningProblem& problem, AbaFramework f1, const StrategyConfig& cfg,
                          Reasoner& reasoner, LearnTrace trace = {});

/// Validates the problem (throwing ValidationFailed) and runs both phases.
LearnResult learn(const LearningProblem& problem, const StrategyConfig& cfg, Reasoner& reasoner);
LearnResult learn(const LearningProblem& problem, const StrategyConfig& cfg = {});

}  // namespace abalearn
