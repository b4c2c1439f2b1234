#pragma once

// Text formats: `.aba` learning problems and `.lp` normal programs.
//
// .aba statements, each terminated by '.':
//   head :- body.            body items are atoms or equalities X = c
//   fact.
//   assumption p/2 contrary q.
//   pos atom.   neg atom.
//   guard p with typing_pred.
// '%' starts a comment; a rule followed by "% learnt" on the same line is
// marked as learnt. Names starting with a lowercase letter or digit are
// constants or predicates; names starting with an uppercase letter or '_'
// are variables.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "abalearn/ground.hpp"
#include "abalearn/model.hpp"

namespace abalearn {

struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
};

std::string to_string(const Diagnostic& d);

struct ProblemDocument {
  LearningProblem problem;
  std::map<std::string, std::string> guards;
};

struct ParseResult {
  ProblemDocument document;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

ParseResult parse_problem(std::string_view text);

/// Renders a document in the `.aba` grammar; parse_problem reads it back.
std::string serialize(const ProblemDocument& doc);

struct LpParseResult {
  std::vector<NormalRule> program;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

/// Parses `head :- lit, not lit, X = c.`, facts and `:- body.` constraints.
LpParseResult parse_lp(std::string_view text);

/// Parses a single atom such as `p(a,b)`; nullopt if malformed.
std::optional<Atom> parse_atom(std::string_view text);

}  // namespace abalearn
