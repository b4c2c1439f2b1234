#pragma once

// Direct argumentation semantics for ground flat ABA frameworks. Slow by
// design; used to cross-check the logic-programming route.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "abalearn/model.hpp"

namespace abalearn {

struct GroundAbaRule {
  RuleId source = 0;  // id of the schema this instance came from
  Atom head;
  std::vector<Atom> body;
};

struct GroundAba {
  std::vector<GroundAbaRule> rules;
  std::vector<Atom> assumptions;
  std::map<Atom, Atom> contrary;
};

/// Instantiates `f` over its constants. Every instance of every assumption
/// schema is an assumption.
GroundAba ground_framework(const AbaFramework& f);

struct Argument {
  Atom claim;
  std::set<Atom> support;
  std::set<RuleId> rules_used;
};

/// All arguments with subset-minimal support, trivial ones included.
/// Throws std::invalid_argument above `max_assumptions` assumptions.
std::vector<Argument> enumerate_arguments(const GroundAba& g, std::size_t max_assumptions = 10);

struct Extension {
  std::set<Atom> assumptions;
  std::set<Atom> claims;
};

std::vector<Extension> stable_extensions(const GroundAba& g, std::size_t max_assumptions = 10);

/// Claims common to all stable extensions; nullopt when there is none.
std::optional<std::set<Atom>> cautious_claims(const GroundAba& g, std::size_t max_assumptions = 10);

}  // namespace abalearn
