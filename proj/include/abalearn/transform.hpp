#pragma once

// Transformation rules over ABA frameworks and the trace that records them.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abalearn/encode.hpp"
#include "abalearn/model.hpp"
#include "abalearn/solve.hpp"

namespace abalearn {

/// The learnt-fact form p(X,Y) :- X=t1, Y=t2 of a ground atom.
Rule fact_rule(const Atom& fact);

/// Adds `fact` as a learnt rule unless an equal fact is already present.
/// Returns the new rule id, or nullopt for a duplicate.
/// Throws AssumptionAsFact if the predicate is an assumption.
std::optional<RuleId> rote_learn(AbaFramework& f, const Atom& fact);

/// One application of Folding: the target's matched parts (`matched_eqs`,
/// `matched_atoms`) are replaced by the head of the folding rule under
/// `substitution`, and the folding rule's unmatched equalities are added as
/// `residual_eqs`.
struct FoldStep {
  RuleId target_rule = 0;
  RuleId folding_rule = 0;
  std::vector<Equality> matched_eqs;
  std::vector<Equality> residual_eqs;
  std::vector<Atom> matched_atoms;
  /// Folding-rule variable -> term of the result.
  std::map<std::string, Term> substitution;
};

/// First match of `folding` against `target`, or nullopt. Equalities are
/// compared after rewriting both rules into equality form.
std::optional<FoldStep> match_fold(const Rule& target, const Rule& folding);

/// The folded rule. Throws NoMatch if `step` does not fit the two rules.
Rule fold(const Rule& target, const Rule& folding, const FoldStep& step);
Rule fold(const AbaFramework& f, const FoldStep& step);

struct FoldResult {
  Rule rule;
  std::vector<FoldStep> steps;
};

/// Predicate consulted on each intensional rule reached by fold_all.
using FoldAcceptor = std::function<bool(const Rule&)>;

/// Depth-first search for an intensional rule obtainable from `rho` by
/// repeated folding with the other rules of `f` (background rules first,
/// then learnt ones, each by id). At most `bound` alternatives are tried at
/// each step. The first intensional rule accepted by `accept` is returned;
/// failing that, the first intensional rule found; failing that, nullopt.
std::optional<FoldResult> fold_all(const AbaFramework& f, const Rule& rho, std::size_t bound,
                                   const FoldAcceptor& accept = nullptr);

/// Replaces rule `rho` by the same rule with a fresh assumption over all of
/// its variables appended, declaring that assumption with a fresh contrary.
/// Returns the new schema; the rewritten rule is the framework's last rule.
AssumptionSchema assumption_introduction(AbaFramework& f, RuleId rho);

/// Deletes the learnt fact `rho` if its atom is a cautious consequence of
/// the framework without it. Returns true if it was deleted.
bool subsumption(AbaFramework& f, RuleId rho, Reasoner& reasoner, const EncodingConfig& cfg = {});

enum class StepKind { RoteLearning, Folding, AssumptionIntroduction, Subsumption };

const char* to_string(StepKind kind);

struct TraceEntry {
  StepKind kind;
  std::vector<Rule> consumed;
  std::vector<Rule> produced;
  std::optional<AssumptionSchema> assumption;
  std::string evidence;
};

using LearnTrace = std::vector<TraceEntry>;

/// Single-line rendering: kind, consumed and produced rules with ids, evidence.
std::string to_string(const TraceEntry& entry);

/// Re-applies `trace` to `background`, keeping the recorded rule ids.
AbaFramework replay(const AbaFramework& background, const LearnTrace& trace);

}  // namespace abalearn
