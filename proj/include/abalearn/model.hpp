#pragma once

// Data model for ABA learning problems: terms, atoms, rules, assumption
// schemata, frameworks and the structural checks they must pass.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace abalearn {

class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable };

  static Term constant(std::string name);
  static Term variable(std::string name);

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  const std::string& name() const { return name_; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}
  Kind kind_;
  std::string name_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  Atom() = default;
  explicit Atom(std::string pred, std::vector<Term> a = {})
      : predicate(std::move(pred)), args(std::move(a)) {}

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Binding `var = value` of a variable to a constant. Learnt facts are
/// written with these, e.g. guilty(X) <- X = david.
class Equality {
 public:
  Equality(Term var, Term value);
  Equality(std::string var, std::string value)
      : Equality(Term::variable(std::move(var)), Term::constant(std::move(value))) {}

  const Term& var() const { return var_; }
  const Term& value() const { return value_; }

  friend auto operator<=>(const Equality&, const Equality&) = default;
  friend bool operator==(const Equality&, const Equality&) = default;

 private:
  Term var_;
  Term value_;
};

using RuleId = std::uint32_t;

enum class Provenance : std::uint8_t { Background, Learnt };

struct Rule {
  RuleId id = 0;
  Atom head;
  std::vector<Equality> eqs;
  std::vector<Atom> atoms;  // non-assumption body atoms
  std::vector<Atom> asms;   // assumption body atoms
  Provenance provenance = Provenance::Background;

  bool is_fact() const { return atoms.empty() && asms.empty(); }
  bool is_learnt() const { return provenance == Provenance::Learnt; }
};

/// Structural equality ignoring id and provenance.
bool same_content(const Rule& a, const Rule& b);

struct AssumptionSchema {
  std::string predicate;
  std::size_t arity = 0;
  std::string contrary;

  friend bool operator==(const AssumptionSchema&, const AssumptionSchema&) = default;
};

/// Contrary atom of an assumption atom: same arguments, contrary predicate.
Atom contrary_atom(const AssumptionSchema& schema, const Atom& assumption);

class AbaFramework {
 public:
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<AssumptionSchema>& assumptions() const { return assumptions_; }

  /// Appends a rule under a fresh id and returns that id.
  RuleId add_rule(Rule rule);
  /// Appends a rule keeping its id (used when replaying traces).
  void insert_rule(Rule rule);
  bool remove_rule(RuleId id);
  const Rule* find_rule(RuleId id) const;
  /// Replaces `id` by `rule`, which gets a fresh id; returns it.
  RuleId replace_rule(RuleId id, Rule rule);

  void add_assumption(AssumptionSchema schema);

  bool is_assumption(const std::string& predicate) const;
  const AssumptionSchema* assumption(const std::string& predicate) const;
  /// True if `predicate` is the contrary of some assumption schema.
  bool is_contrary(const std::string& predicate) const;

  /// All constants occurring in rules, sorted.
  std::set<std::string> constants() const;
  /// All predicate names used anywhere (rules, assumptions, contraries).
  std::set<std::string> predicates() const;

  RuleId next_id() const { return next_id_; }

  friend bool operator==(const AbaFramework& a, const AbaFramework& b);

 private:
  std::vector<Rule> rules_;
  std::vector<AssumptionSchema> assumptions_;
  RuleId next_id_ = 1;
};

struct LearningProblem {
  AbaFramework framework;
  std::vector<Atom> pos;
  std::vector<Atom> neg;
};

struct Violation {
  enum class Kind : std::uint8_t {
    NotFlat,
    AssumptionInManyRules,   // an assumption occurs in several rule bodies
    UncoveredAssumptionVar,  // an assumption variable is not bound by the rest of the body
    NonGroundFact,           // a fact with variables
    UnsafeRule,
    ArityMismatch,
    BadContrary,
    MisplacedAtom,
    DuplicateAssumption,
    OrphanConstant,
    ExampleOverlap,
    AssumptionExample,
    NonGroundExample,
  };
  Kind kind;
  std::string subject;
  std::string message;
};

const char* to_string(Violation::Kind kind);

std::vector<Violation> validate(const AbaFramework& framework);
std::vector<Violation> validate(const LearningProblem& problem);

/// Variables of an item in order of first occurrence.
std::vector<Term> vars(const Atom& atom);
std::vector<Term> vars(const std::vector<Atom>& atoms);
std::vector<Term> vars(const Rule& rule);
/// Variables of the body only (equalities, atoms, assumptions).
std::vector<Term> body_vars(const Rule& rule);

bool is_intensional(const Rule& rule);

/// The ground atom a fact stands for (p(c) <- or p(X) <- X = c), if `rule`
/// is a fact whose head becomes ground under its equalities.
std::optional<Atom> fact_atom(const Rule& rule);

/// Canonical variable name for argument position `i`: X, Y, Z, W, V, U, X7, ...
std::string positional_variable(std::size_t i);

/// Rewrites constants in the head into equalities, e.g. p(a,b) <- becomes
/// p(X,Y) <- X = a, Y = b. Rules with variable-only heads are unchanged.
Rule equality_form(const Rule& rule);

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Equality& eq);
/// Rule in the `.aba` surface syntax, terminated by '.'.
std::string to_string(const Rule& rule);
std::string to_string(const AssumptionSchema& schema);

}  // namespace abalearn
