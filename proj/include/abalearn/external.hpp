#pragma once

// Adapter for an external answer-set solver run as a subprocess.
//
// The command template must contain "{file}", replaced by the path of a
// temporary file holding the program. The solver is expected to print
// "Answer: k" lines each followed by a line of space-separated atoms, or
// "UNSATISFIABLE". For clingo use e.g. "clingo 0 {file}".

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abalearn/ground.hpp"
#include "abalearn/solve.hpp"

namespace abalearn {

/// Answer sets as atoms rather than indices into a ground program.
struct SymbolicReport {
  std::vector<std::set<Atom>> answer_sets;  // sorted
  std::optional<std::set<Atom>> cautious;
  bool satisfiable = false;
  bool truncated = false;

  friend bool operator==(const SymbolicReport&, const SymbolicReport&) = default;
};

SymbolicReport symbolic(const GroundProgram& gp, const AnswerSetReport& report);

/// Parses solver output. Throws SolverOutputUnparseable.
SymbolicReport parse_solver_output(const std::string& output);

/// Writes `program_text` to a temporary file and runs `command_template`.
/// Throws SolverSpawnFailed or SolverOutputUnparseable.
SymbolicReport external_solve(const std::string& program_text, const std::string& command_template);

/// Environment variable consulted for the command template.
inline constexpr const char* kSolverEnv = "ABALEARN_SOLVER";

class ExternalReasoner : public Reasoner {
 public:
  explicit ExternalReasoner(std::string command_template) : command_(std::move(command_template)) {}
  std::optional<std::set<Atom>> cautious(const std::vector<NormalRule>& program) override;

 private:
  std::string command_;
};

}  // namespace abalearn
