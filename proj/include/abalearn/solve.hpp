#pragma once

// Stable-model computation over ground programs.

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "abalearn/ground.hpp"

namespace abalearn {

inline constexpr std::size_t kDefaultEnumLimit = 100000;

/// Gelfond-Lifschitz reduct: drops every rule (constraints included) with a
/// negated atom in `i` and strips the negative bodies of the rest.
GroundProgram reduct(const GroundProgram& program, const Interpretation& i);

/// Least model of the definite rules of `program`; constraints and negative
/// bodies are ignored.
Interpretation least_model(const GroundProgram& program);

/// True if `i` equals the least model of its reduct and violates no constraint.
bool is_answer_set(const GroundProgram& program, const Interpretation& i);

struct AnswerSetReport {
  std::vector<Interpretation> answer_sets;  // lexicographic order
  std::optional<Interpretation> cautious;   // empty when unsatisfiable or truncated
  bool satisfiable = false;
  bool truncated = false;
};

/// Enumerates answer sets, at most `limit` of them.
AnswerSetReport answer_sets(const GroundProgram& program, std::size_t limit = kDefaultEnumLimit);

/// Intersection of all answer sets, or nullopt when there are none.
///
/// Computed without full enumeration: starting from one answer set, each
/// remaining candidate atom is refuted by searching for an answer set that
/// lacks it, restricted to the independent part of the program the atom
/// lives in. `limit` bounds the number of answer sets computed along the way;
/// exceeding it throws EnumerationTruncated.
std::optional<Interpretation> cautious(const GroundProgram& program,
                                       std::size_t limit = kDefaultEnumLimit);

/// Cautious consequences of a non-ground program with constraints.
class Reasoner {
 public:
  virtual ~Reasoner() = default;
  /// Atoms true in every answer set; nullopt if there is no answer set.
  virtual std::optional<std::set<Atom>> cautious(const std::vector<NormalRule>& program) = 0;
};

/// Grounds over the program's own constants and solves in-process.
class EmbeddedReasoner : public Reasoner {
 public:
  explicit EmbeddedReasoner(std::size_t limit = kDefaultEnumLimit) : limit_(limit) {}
  std::optional<std::set<Atom>> cautious(const std::vector<NormalRule>& program) override;

 private:
  std::size_t limit_;
};

}  // namespace abalearn
