#pragma once

// Normal logic programs with constraints and their instantiation over a
// finite set of constants.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "abalearn/model.hpp"

namespace abalearn {

/// head :- eqs, pos, not neg.   A missing head makes the rule a constraint.
struct NormalRule {
  std::optional<Atom> head;
  std::vector<Equality> eqs;
  std::vector<Atom> pos;
  std::vector<Atom> neg;

  bool is_constraint() const { return !head.has_value(); }
  friend bool operator==(const NormalRule&, const NormalRule&) = default;
};

std::string to_string(const NormalRule& rule);
/// One rule per line in conventional ASP syntax.
std::string to_asp_text(const std::vector<NormalRule>& program);

/// Constants occurring anywhere in `program`.
std::set<std::string> constants_of(const std::vector<NormalRule>& program);

using AtomId = std::uint32_t;

struct GroundRule {
  std::optional<AtomId> head;
  std::vector<AtomId> pos;
  std::vector<AtomId> neg;

  bool is_constraint() const { return !head.has_value(); }
  friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

class GroundProgram {
 public:
  AtomId intern(const Atom& atom);
  std::optional<AtomId> find(const Atom& atom) const;
  const Atom& atom(AtomId id) const { return atoms_[id]; }
  std::size_t num_atoms() const { return atoms_.size(); }

  void add_rule(GroundRule rule);
  const std::vector<GroundRule>& rules() const { return rules_; }

  /// Convenience for tests: rule over named propositional atoms.
  void add(std::optional<std::string> head, std::vector<std::string> pos = {},
           std::vector<std::string> neg = {});

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<std::string, AtomId> index_;
  std::vector<GroundRule> rules_;
};

std::string to_string(const GroundProgram& program, const GroundRule& rule);

/// A set of true atoms, kept sorted by atom index.
class Interpretation {
 public:
  Interpretation() = default;
  explicit Interpretation(std::vector<AtomId> atoms);

  bool contains(AtomId id) const;
  const std::vector<AtomId>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  bool subset_of(const Interpretation& other) const;

  friend auto operator<=>(const Interpretation&, const Interpretation&) = default;
  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::vector<AtomId> atoms_;
};

Interpretation intersect(const Interpretation& a, const Interpretation& b);
std::set<Atom> atoms_of(const GroundProgram& program, const Interpretation& i);

/// Instantiates `program` over `constants`. Only instances whose positive
/// body is derivable in the positive over-approximation of the program are
/// kept; equalities are resolved during instantiation. Atoms are indexed by
/// first occurrence in the emitted rules.
GroundProgram ground(const std::vector<NormalRule>& program, const std::set<std::string>& constants);

}  // namespace abalearn
