#include "abalearn/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace abalearn {

Term Term::constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("constant name must be nonempty");
  return Term(Kind::Constant, std::move(name));
}

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  return Term(Kind::Variable, std::move(name));
}

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
}

Equality::Equality(Term var, Term value) : var_(std::move(var)), value_(std::move(value)) {
  if (!var_.is_variable()) throw std::invalid_argument("equality must bind a variable");
  if (!value_.is_constant()) throw std::invalid_argument("equality value must be a constant");
}

bool same_content(const Rule& a, const Rule& b) {
  return a.head == b.head && a.eqs == b.eqs && a.atoms == b.atoms && a.asms == b.asms;
}

Atom contrary_atom(const AssumptionSchema& schema, const Atom& assumption) {
  return Atom(schema.contrary, assumption.args);
}

// ---------------------------------------------------------------------------
// AbaFramework

RuleId AbaFramework::add_rule(Rule rule) {
  rule.id = next_id_++;
  rules_.push_back(std::move(rule));
  return rules_.back().id;
}

void AbaFramework::insert_rule(Rule rule) {
  if (find_rule(rule.id) != nullptr) {
    throw std::invalid_argument("duplicate rule id " + std::to_string(rule.id));
  }
  next_id_ = std::max(next_id_, rule.id + 1);
  rules_.push_back(std::move(rule));
}

bool AbaFramework::remove_rule(RuleId id) {
  auto it = std::find_if(rules_.begin(), rules_.end(), [id](const Rule& r) { return r.id == id; });
  if (it == rules_.end()) return false;
  rules_.erase(it);
  return true;
}

const Rule* AbaFramework::find_rule(RuleId id) const {
  auto it = std::find_if(rules_.begin(), rules_.end(), [id](const Rule& r) { return r.id == id; });
  return it == rules_.end() ? nullptr : &*it;
}

RuleId AbaFramework::replace_rule(RuleId id, Rule rule) {
  if (!remove_rule(id)) throw std::invalid_argument("no rule with id " + std::to_string(id));
  return add_rule(std::move(rule));
}

void AbaFramework::add_assumption(AssumptionSchema schema) { assumptions_.push_back(std::move(schema)); }

bool AbaFramework::is_assumption(const std::string& predicate) const {
  return assumption(predicate) != nullptr;
}

const AssumptionSchema* AbaFramework::assumption(const std::string& predicate) const {
  for (const auto& a : assumptions_) {
    if (a.predicate == predicate) return &a;
  }
  return nullptr;
}

bool AbaFramework::is_contrary(const std::string& predicate) const {
  return std::any_of(assumptions_.begin(), assumptions_.end(),
                     [&](const AssumptionSchema& a) { return a.contrary == predicate; });
}

namespace {

void collect_constants(const Atom& atom, std::set<std::string>& out) {
  for (const auto& t : atom.args) {
    if (t.is_constant()) out.insert(t.name());
  }
}

void collect_constants(const Rule& rule, std::set<std::string>& out) {
  collect_constants(rule.head, out);
  for (const auto& eq : rule.eqs) out.insert(eq.value().name());
  for (const auto& a : rule.atoms) collect_constants(a, out);
  for (const auto& a : rule.asms) collect_constants(a, out);
}

void push_unique(std::vector<Term>& out, const Term& t) {
  if (t.is_variable() && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

}  // namespace

std::set<std::string> AbaFramework::constants() const {
  std::set<std::string> out;
  for (const auto& r : rules_) collect_constants(r, out);
  return out;
}

std::set<std::string> AbaFramework::predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules_) {
    out.insert(r.head.predicate);
    for (const auto& a : r.atoms) out.insert(a.predicate);
    for (const auto& a : r.asms) out.insert(a.predicate);
  }
  for (const auto& a : assumptions_) {
    out.insert(a.predicate);
    out.insert(a.contrary);
  }
  return out;
}

bool operator==(const AbaFramework& a, const AbaFramework& b) {
  if (!(a.assumptions_ == b.assumptions_) || a.rules_.size() != b.rules_.size()) return false;
  for (std::size_t i = 0; i < a.rules_.size(); ++i) {
    const Rule& x = a.rules_[i];
    const Rule& y = b.rules_[i];
    if (x.id != y.id || x.provenance != y.provenance || !same_content(x, y)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Variables and rule shape

std::vector<Term> vars(const Atom& atom) {
  std::vector<Term> out;
  for (const auto& t : atom.args) push_unique(out, t);
  return out;
}

std::vector<Term> vars(const std::vector<Atom>& atoms) {
  std::vector<Term> out;
  for (const auto& a : atoms) {
    for (const auto& t : a.args) push_unique(out, t);
  }
  return out;
}

std::vector<Term> body_vars(const Rule& rule) {
  std::vector<Term> out;
  for (const auto& eq : rule.eqs) push_unique(out, eq.var());
  for (const auto& a : rule.atoms) {
    for (const auto& t : a.args) push_unique(out, t);
  }
  for (const auto& a : rule.asms) {
    for (const auto& t : a.args) push_unique(out, t);
  }
  return out;
}

std::vector<Term> vars(const Rule& rule) {
  std::vector<Term> out = vars(rule.head);
  for (const auto& t : body_vars(rule)) push_unique(out, t);
  return out;
}

std::optional<Atom> fact_atom(const Rule& rule) {
  if (!rule.is_fact()) return std::nullopt;
  std::map<std::string, std::string> binding;
  for (const auto& eq : rule.eqs) {
    auto [it, inserted] = binding.emplace(eq.var().name(), eq.value().name());
    if (!inserted && it->second != eq.value().name()) return std::nullopt;
  }
  Atom out(rule.head.predicate);
  for (const auto& t : rule.head.args) {
    if (t.is_constant()) {
      out.args.push_back(t);
      continue;
    }
    auto it = binding.find(t.name());
    if (it == binding.end()) return std::nullopt;
    out.args.push_back(Term::constant(it->second));
  }
  return out;
}

bool is_intensional(const Rule& rule) {
  if (!rule.eqs.empty()) return false;
  return !(rule.is_fact() && rule.head.is_ground());
}

std::string positional_variable(std::size_t i) {
  static const char* const kNames[] = {"X", "Y", "Z", "W", "V", "U"};
  if (i < std::size(kNames)) return kNames[i];
  return "X" + std::to_string(i + 1);
}

Rule equality_form(const Rule& rule) {
  if (rule.head.is_ground() && rule.head.arity() == 0) return rule;
  std::vector<Term> used = vars(rule);
  auto is_used = [&](const std::string& n) {
    return std::any_of(used.begin(), used.end(), [&](const Term& t) { return t.name() == n; });
  };
  Rule out = rule;
  std::vector<Equality> fresh_eqs;
  std::size_t next = 0;
  for (auto& t : out.head.args) {
    if (!t.is_constant()) {
      ++next;
      continue;
    }
    std::string name = positional_variable(next++);
    for (std::size_t k = 0; is_used(name); ++k) name = positional_variable(k);
    used.push_back(Term::variable(name));
    fresh_eqs.emplace_back(Term::variable(name), t);
    t = Term::variable(name);
  }
  if (fresh_eqs.empty()) return rule;
  fresh_eqs.insert(fresh_eqs.end(), out.eqs.begin(), out.eqs.end());
  out.eqs = std::move(fresh_eqs);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& term) { return term.name(); }

std::string to_string(const Atom& atom) {
  std::string s = atom.predicate;
  if (atom.args.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) s += ',';
    s += atom.args[i].name();
  }
  s += ')';
  return s;
}

std::string to_string(const Equality& eq) { return eq.var().name() + "=" + eq.value().name(); }

std::string to_string(const Rule& rule) {
  std::string s = to_string(rule.head);
  std::vector<std::string> body;
  for (const auto& eq : rule.eqs) body.push_back(to_string(eq));
  for (const auto& a : rule.atoms) body.push_back(to_string(a));
  for (const auto& a : rule.asms) body.push_back(to_string(a));
  if (!body.empty()) {
    s += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) s += ", ";
      s += body[i];
    }
  }
  s += '.';
  return s;
}

std::string to_string(const AssumptionSchema& schema) {
  return "assumption " + schema.predicate + "/" + std::to_string(schema.arity) + " contrary " +
         schema.contrary + ".";
}

// ---------------------------------------------------------------------------
// Validation

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::NotFlat: return "not-flat";
    case Violation::Kind::AssumptionInManyRules: return "assumption-in-many-rules";
    case Violation::Kind::UncoveredAssumptionVar: return "uncovered-assumption-variable";
    case Violation::Kind::NonGroundFact: return "non-ground-fact";
    case Violation::Kind::UnsafeRule: return "unsafe-rule";
    case Violation::Kind::ArityMismatch: return "arity-mismatch";
    case Violation::Kind::BadContrary: return "bad-contrary";
    case Violation::Kind::MisplacedAtom: return "misplaced-atom";
    case Violation::Kind::DuplicateAssumption: return "duplicate-assumption";
    case Violation::Kind::OrphanConstant: return "orphan-constant";
    case Violation::Kind::ExampleOverlap: return "example-overlap";
    case Violation::Kind::AssumptionExample: return "assumption-example";
    case Violation::Kind::NonGroundExample: return "non-ground-example";
  }
  return "unknown";
}

namespace {

using Kind = Violation::Kind;

class ArityTable {
 public:
  void note(const std::string& pred, std::size_t arity, const std::string& where) {
    auto [it, inserted] = arity_.emplace(pred, arity);
    if (!inserted && it->second != arity && reported_.insert(pred).second) {
      out_.push_back({Kind::ArityMismatch, pred,
                      pred + " used with arity " + std::to_string(it->second) + " and " +
                          std::to_string(arity) + " (" + where + ")"});
    }
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::map<std::string, std::size_t> arity_;
  std::set<std::string> reported_;
  std::vector<Violation> out_;
};

bool contains_var(const std::vector<Term>& vs, const Term& t) {
  return std::find(vs.begin(), vs.end(), t) != vs.end();
}

std::set<std::string> fact_constants(const AbaFramework& f) {
  std::set<std::string> out;
  for (const auto& r : f.rules()) {
    if (!r.is_fact()) continue;
    collect_constants(r, out);
  }
  return out;
}

void check_framework(const AbaFramework& f, ArityTable& arities, std::vector<Violation>& out) {
  std::map<std::string, std::set<RuleId>> hosting;
  std::set<std::string> declared;
  for (const auto& a : f.assumptions()) {
    if (!declared.insert(a.predicate).second) {
      out.push_back({Kind::DuplicateAssumption, a.predicate,
                     "assumption " + a.predicate + " declared more than once"});
    }
    if (f.is_assumption(a.contrary)) {
      out.push_back({Kind::BadContrary, a.predicate,
                     "contrary " + a.contrary + " of " + a.predicate + " is itself an assumption"});
    }
    arities.note(a.predicate, a.arity, "assumption declaration");
    arities.note(a.contrary, a.arity, "contrary of " + a.predicate);
  }

  for (const auto& r : f.rules()) {
    const std::string subject = "rule " + std::to_string(r.id) + ": " + to_string(r);
    if (f.is_assumption(r.head.predicate)) {
      out.push_back({Kind::NotFlat, subject, "assumption " + r.head.predicate + " is a rule head"});
    }
    arities.note(r.head.predicate, r.head.arity(), subject);
    for (const auto& a : r.atoms) {
      arities.note(a.predicate, a.arity(), subject);
      if (f.is_assumption(a.predicate)) {
        out.push_back({Kind::MisplacedAtom, subject, a.predicate + " is an assumption"});
      }
    }
    const std::vector<Term> atom_vars = vars(r.atoms);
    for (const auto& a : r.asms) {
      arities.note(a.predicate, a.arity(), subject);
      if (!f.is_assumption(a.predicate)) {
        out.push_back({Kind::MisplacedAtom, subject, a.predicate + " is not an assumption"});
        continue;
      }
      hosting[a.predicate].insert(r.id);
      for (const auto& v : vars(a)) {
        if (!contains_var(atom_vars, v)) {
          out.push_back({Kind::UncoveredAssumptionVar, subject,
                         "variable " + v.name() + " of " + to_string(a) +
                             " occurs in no non-assumption body atom"});
        }
      }
    }

    std::vector<Term> bound = atom_vars;
    for (const auto& eq : r.eqs) bound.push_back(eq.var());
    const std::vector<Term> head_vars = vars(r.head);
    const bool head_bound = std::all_of(head_vars.begin(), head_vars.end(),
                                        [&](const Term& v) { return contains_var(bound, v); });
    if (!head_bound) {
      if (r.is_fact()) {
        out.push_back({Kind::NonGroundFact, subject, "fact is not ground"});
      } else {
        out.push_back({Kind::UnsafeRule, subject, "head variable not bound by the body"});
      }
    }
  }

  for (const auto& [pred, rules] : hosting) {
    if (rules.size() > 1) {
      out.push_back({Kind::AssumptionInManyRules, pred,
                     "assumption " + pred + " occurs in the body of " + std::to_string(rules.size()) +
                         " rules"});
    }
  }

  const std::set<std::string> grounded = fact_constants(f);
  for (const auto& c : f.constants()) {
    if (!grounded.count(c)) {
      out.push_back({Kind::OrphanConstant, c, "constant " + c + " occurs in no fact"});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const AbaFramework& framework) {
  ArityTable arities;
  std::vector<Violation> out;
  check_framework(framework, arities, out);
  auto arity_violations = arities.take();
  out.insert(out.end(), arity_violations.begin(), arity_violations.end());
  return out;
}

std::vector<Violation> validate(const LearningProblem& problem) {
  const AbaFramework& f = problem.framework;
  ArityTable arities;
  std::vector<Violation> out;
  check_framework(f, arities, out);

  const std::set<std::string> grounded = fact_constants(f);
  auto check_example = [&](const Atom& e, const char* sign) {
    const std::string subject = std::string(sign) + " " + to_string(e);
    arities.note(e.predicate, e.arity(), subject);
    if (!e.is_ground()) out.push_back({Kind::NonGroundExample, subject, "example is not ground"});
    if (f.is_assumption(e.predicate)) {
      out.push_back({Kind::AssumptionExample, subject, e.predicate + " is an assumption"});
    }
    for (const auto& t : e.args) {
      if (t.is_constant() && !grounded.count(t.name())) {
        out.push_back({Kind::OrphanConstant, subject, "constant " + t.name() + " occurs in no fact"});
      }
    }
  };
  for (const auto& e : problem.pos) check_example(e, "pos");
  for (const auto& e : problem.neg) check_example(e, "neg");
  for (const auto& e : problem.pos) {
    if (std::find(problem.neg.begin(), problem.neg.end(), e) != problem.neg.end()) {
      out.push_back({Kind::ExampleOverlap, to_string(e), "example is both positive and negative"});
    }
  }

  auto arity_violations = arities.take();
  out.insert(out.end(), arity_violations.begin(), arity_violations.end());
  return out;
}

}  // namespace abalearn
