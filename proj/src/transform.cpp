#include "abalearn/transform.hpp"

#include <algorithm>
#include <set>

#include "abalearn/error.hpp"

namespace abalearn {

Rule fact_rule(const Atom& fact) {
  Rule r;
  r.head.predicate = fact.predicate;
  for (std::size_t i = 0; i < fact.args.size(); ++i) {
    const Term x = Term::variable(positional_variable(i));
    r.head.args.push_back(x);
    r.eqs.emplace_back(x, fact.args[i]);
  }
  r.provenance = Provenance::Learnt;
  return r;
}

std::optional<RuleId> rote_learn(AbaFramework& f, const Atom& fact) {
  if (f.is_assumption(fact.predicate)) {
    throw AssumptionAsFact("cannot learn a fact for assumption " + to_string(fact));
  }
  if (!fact.is_ground()) throw std::invalid_argument("rote learning needs a ground atom: " + to_string(fact));
  for (const auto& r : f.rules()) {
    if (fact_atom(r) == fact) return std::nullopt;
  }
  return f.add_rule(fact_rule(fact));
}

// ---------------------------------------------------------------------------
// Folding

namespace {

using Subst = std::map<std::string, Term>;

Atom apply(const Subst& s, const Atom& a) {
  Atom out(a.predicate);
  for (const auto& t : a.args) {
    if (!t.is_variable()) {
      out.args.push_back(t);
      continue;
    }
    auto it = s.find(t.name());
    if (it == s.end()) throw NoMatch("variable " + t.name() + " of the folding rule is unbound");
    out.args.push_back(it->second);
  }
  return out;
}

// Removes one occurrence of each element of `part` from `whole`.
template <typename T>
bool take_out(std::vector<T>& whole, const std::vector<T>& part) {
  for (const auto& x : part) {
    auto it = std::find(whole.begin(), whole.end(), x);
    if (it == whole.end()) return false;
    whole.erase(it);
  }
  return true;
}

template <typename T>
bool same_multiset(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::set<std::string> var_names(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(t.name());
  return out;
}

bool bind_atom(Subst& s, const Atom& pattern, const Atom& target) {
  if (pattern.predicate != target.predicate || pattern.arity() != target.arity()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& t = target.args[i];
    if (p.is_constant()) {
      if (p != t) return false;
      continue;
    }
    auto [it, inserted] = s.emplace(p.name(), t);
    if (!inserted && it->second != t) return false;
  }
  return true;
}

class FoldMatcher {
 public:
  FoldMatcher(const Rule& target, const Rule& folding)
      : target_(target), folding_(folding), t_(equality_form(target)), f_(equality_form(folding)) {
    body_ = f_.atoms;
    body_.insert(body_.end(), f_.asms.begin(), f_.asms.end());
    used_atoms_.assign(t_.atoms.size(), false);
    used_asms_.assign(t_.asms.size(), false);
  }

  std::optional<FoldStep> run() {
    Subst s;
    return assign(0, s);
  }

 private:
  // Maps body atom k of the folding rule onto an unused target atom.
  std::optional<FoldStep> assign(std::size_t k, Subst& s) {
    if (k == body_.size()) return finish(s);
    const bool is_asm = k >= f_.atoms.size();
    const auto& pool = is_asm ? t_.asms : t_.atoms;
    auto& used = is_asm ? used_asms_ : used_atoms_;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      Subst next = s;
      if (!bind_atom(next, body_[k], pool[i])) continue;
      used[i] = true;
      auto r = assign(k + 1, next);
      used[i] = false;
      if (r) return r;
    }
    return std::nullopt;
  }

  std::optional<FoldStep> finish(Subst s) {
    FoldStep step;
    step.target_rule = target_.id;
    step.folding_rule = folding_.id;
    std::vector<bool> consumed(t_.eqs.size(), false);
    std::set<std::string> taken = var_names(vars(t_));

    for (const auto& eq : f_.eqs) {
      const std::string& v = eq.var().name();
      auto it = s.find(v);
      if (it != s.end()) {
        if (it->second.is_constant()) {
          if (it->second != eq.value()) return std::nullopt;
          continue;
        }
        const Equality want(it->second, eq.value());
        std::size_t i = 0;
        while (i < t_.eqs.size() && (consumed[i] || t_.eqs[i] != want)) ++i;
        if (i == t_.eqs.size()) return std::nullopt;
        consumed[i] = true;
        continue;
      }
      std::size_t i = 0;
      while (i < t_.eqs.size() && (consumed[i] || t_.eqs[i].value() != eq.value())) ++i;
      if (i < t_.eqs.size()) {
        consumed[i] = true;
        s.emplace(v, t_.eqs[i].var());
        continue;
      }
      std::string name = v;
      for (std::size_t n = 0; taken.count(name); ++n) name = positional_variable(n);
      taken.insert(name);
      const Term fresh = Term::variable(name);
      s.emplace(v, fresh);
      step.residual_eqs.emplace_back(fresh, eq.value());
    }

    for (std::size_t i = 0; i < t_.eqs.size(); ++i) {
      if (consumed[i]) step.matched_eqs.push_back(t_.eqs[i]);
    }
    for (std::size_t i = 0; i < t_.atoms.size(); ++i) {
      if (used_atoms_[i]) step.matched_atoms.push_back(t_.atoms[i]);
    }
    for (std::size_t i = 0; i < t_.asms.size(); ++i) {
      if (used_asms_[i]) step.matched_atoms.push_back(t_.asms[i]);
    }
    step.substitution = std::move(s);
    try {
      fold(target_, folding_, step);
    } catch (const NoMatch&) {
      return std::nullopt;
    }
    return step;
  }

  const Rule& target_;
  const Rule& folding_;
  Rule t_;
  Rule f_;
  std::vector<Atom> body_;
  std::vector<bool> used_atoms_;
  std::vector<bool> used_asms_;
};

}  // namespace

std::optional<FoldStep> match_fold(const Rule& target, const Rule& folding) {
  return FoldMatcher(target, folding).run();
}

Rule fold(const Rule& target, const Rule& folding, const FoldStep& step) {
  const Rule t = equality_form(target);
  const Rule f = equality_form(folding);
  const Subst& s = step.substitution;

  std::vector<Equality> wanted;
  std::vector<Equality> residual = step.residual_eqs;
  std::vector<Equality> residual_seen;
  for (const auto& eq : f.eqs) {
    auto it = s.find(eq.var().name());
    if (it == s.end()) throw NoMatch("variable " + eq.var().name() + " of the folding rule is unbound");
    if (it->second.is_constant()) {
      if (it->second != eq.value()) throw NoMatch("equality " + to_string(eq) + " contradicts the substitution");
      continue;
    }
    Equality mapped(it->second, eq.value());
    auto r = std::find(residual.begin(), residual.end(), mapped);
    if (r != residual.end()) {
      residual_seen.push_back(*r);
      residual.erase(r);
    } else {
      wanted.push_back(mapped);
    }
  }
  if (!residual.empty()) throw NoMatch("residual equality not produced by the folding rule");
  if (!same_multiset(wanted, step.matched_eqs)) throw NoMatch("matched equalities differ from the folding rule's");

  std::vector<Atom> mapped_atoms;
  for (const auto& a : f.atoms) mapped_atoms.push_back(apply(s, a));
  std::vector<Atom> mapped_asms;
  for (const auto& a : f.asms) mapped_asms.push_back(apply(s, a));
  std::vector<Atom> all = mapped_atoms;
  all.insert(all.end(), mapped_asms.begin(), mapped_asms.end());
  if (!same_multiset(all, step.matched_atoms)) throw NoMatch("matched atoms differ from the folding rule's body");

  Rule out;
  out.id = target.id;
  out.provenance = target.provenance;
  out.head = t.head;
  out.eqs = t.eqs;
  out.atoms = t.atoms;
  out.asms = t.asms;
  if (!take_out(out.eqs, step.matched_eqs)) throw NoMatch("matched equalities are not in the target");
  if (!take_out(out.atoms, mapped_atoms)) throw NoMatch("matched atoms are not in the target");
  if (!take_out(out.asms, mapped_asms)) throw NoMatch("matched assumptions are not in the target");

  const std::set<std::string> target_vars = var_names(vars(t));
  for (const auto& eq : step.residual_eqs) {
    if (target_vars.count(eq.var().name())) {
      throw NoMatch("residual variable " + eq.var().name() + " is not fresh");
    }
  }

  // Folding-rule variables absent from its head must map to distinct
  // variables that do not survive elsewhere in the result.
  const std::set<std::string> head_vars = var_names(vars(f.head));
  Rule rest = out;
  const std::set<std::string> rest_vars = var_names(vars(rest));
  for (const auto& [v, image] : s) {
    if (head_vars.count(v)) continue;
    if (!image.is_variable()) throw NoMatch("local variable " + v + " of the folding rule is bound to a constant");
    if (rest_vars.count(image.name())) {
      throw NoMatch("local variable " + v + " of the folding rule would capture " + image.name());
    }
    for (const auto& [w, other] : s) {
      if (w != v && other == image) throw NoMatch("local variable " + v + " is aliased");
    }
  }

  out.eqs.insert(out.eqs.end(), step.residual_eqs.begin(), step.residual_eqs.end());
  out.atoms.push_back(apply(s, f.head));

  std::set<std::string> bound = var_names(vars(out.atoms));
  for (const auto& eq : out.eqs) bound.insert(eq.var().name());
  for (const auto& v : vars(out.head)) {
    if (!bound.count(v.name())) throw NoMatch("head variable " + v.name() + " becomes unbound");
  }
  const std::set<std::string> atom_vars = var_names(vars(out.atoms));
  for (const auto& v : vars(out.asms)) {
    if (!atom_vars.count(v.name())) throw NoMatch("assumption variable " + v.name() + " becomes uncovered");
  }
  return out;
}

Rule fold(const AbaFramework& f, const FoldStep& step) {
  const Rule* target = f.find_rule(step.target_rule);
  const Rule* folding = f.find_rule(step.folding_rule);
  if (target == nullptr || folding == nullptr) throw NoMatch("fold step names a missing rule");
  return fold(*target, *folding, step);
}

namespace {

constexpr std::size_t kMaxFoldDepth = 16;

class FoldSearch {
 public:
  FoldSearch(const AbaFramework& f, const Rule& rho, std::size_t bound, const FoldAcceptor& accept)
      : rho_(rho), bound_(bound), accept_(accept) {
    for (bool learnt : {false, true}) {
      std::vector<const Rule*> group;
      for (const auto& r : f.rules()) {
        if (r.is_learnt() != learnt || r.id == rho.id || r.head.predicate == rho.head.predicate) continue;
        group.push_back(&r);
      }
      std::sort(group.begin(), group.end(), [](const Rule* a, const Rule* b) { return a->id < b->id; });
      candidates_.insert(candidates_.end(), group.begin(), group.end());
    }
  }

  std::optional<FoldResult> run() {
    std::vector<FoldStep> path;
    if (auto r = dfs(equality_form(rho_), {}, path)) return r;
    return fallback_;
  }

 private:
  std::optional<FoldResult> dfs(const Rule& rule, const std::set<std::string>& eliminated,
                                std::vector<FoldStep>& path) {
    if (is_intensional(rule)) {
      if (!accept_ || accept_(rule)) return FoldResult{rule, path};
      if (!fallback_) fallback_ = FoldResult{rule, path};
      return std::nullopt;
    }
    if (path.size() >= kMaxFoldDepth || rule.eqs.empty()) return std::nullopt;

    const Equality& position = rule.eqs.front();
    std::size_t tried = 0;
    for (const Rule* cand : candidates_) {
      auto step = match_fold(rule, *cand);
      if (!step) continue;
      if (std::find(step->matched_eqs.begin(), step->matched_eqs.end(), position) == step->matched_eqs.end()) {
        continue;
      }
      std::set<std::string> gone = eliminated;
      for (const auto& eq : step->matched_eqs) gone.insert(eq.value().name());
      const bool reintroduces = std::any_of(step->residual_eqs.begin(), step->residual_eqs.end(),
                                            [&](const Equality& eq) { return gone.count(eq.value().name()) > 0; });
      if (reintroduces) continue;
      Rule next = fold(rule, *cand, *step);
      const std::string& k = next.atoms.back().predicate;
      if (std::count_if(next.atoms.begin(), next.atoms.end(), [&](const Atom& a) { return a.predicate == k; }) > 1) {
        continue;
      }
      step->target_rule = rho_.id;
      path.push_back(*step);
      if (auto r = dfs(next, gone, path)) return r;
      path.pop_back();
      if (++tried == bound_) break;
    }
    return std::nullopt;
  }

  const Rule& rho_;
  std::size_t bound_;
  const FoldAcceptor& accept_;
  std::vector<const Rule*> candidates_;
  std::optional<FoldResult> fallback_;
};

}  // namespace

std::optional<FoldResult> fold_all(const AbaFramework& f, const Rule& rho, std::size_t bound,
                                   const FoldAcceptor& accept) {
  if (bound == 0) throw std::invalid_argument("fold bound must be at least 1");
  return FoldSearch(f, rho, bound, accept).run();
}

// ---------------------------------------------------------------------------
// Assumption introduction and subsumption

AssumptionSchema assumption_introduction(AbaFramework& f, RuleId rho) {
  const Rule* r = f.find_rule(rho);
  if (r == nullptr) throw std::invalid_argument("no rule with id " + std::to_string(rho));
  const std::set<std::string> preds = f.predicates();
  AssumptionSchema schema;
  for (std::size_t n = 1;; ++n) {
    schema.predicate = "a_" + std::to_string(n);
    schema.contrary = "c_" + schema.predicate;
    if (!preds.count(schema.predicate) && !preds.count(schema.contrary)) break;
  }
  Rule next = *r;
  const std::vector<Term> xs = vars(next);
  schema.arity = xs.size();
  next.asms.emplace_back(schema.predicate, xs);
  f.add_assumption(schema);
  f.replace_rule(rho, std::move(next));
  return schema;
}

bool subsumption(AbaFramework& f, RuleId rho, Reasoner& reasoner, const EncodingConfig& cfg) {
  const Rule* r = f.find_rule(rho);
  if (r == nullptr) throw std::invalid_argument("no rule with id " + std::to_string(rho));
  auto atom = fact_atom(*r);
  if (!atom || !r->is_learnt()) throw std::invalid_argument("subsumption applies to learnt facts only");
  AbaFramework without = f;
  without.remove_rule(rho);
  auto c = reasoner.cautious(encode_base(without, cfg));
  if (!c || !c->count(*atom)) return false;
  f = std::move(without);
  return true;
}

// ---------------------------------------------------------------------------
// Trace

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::RoteLearning: return "rote-learning";
    case StepKind::Folding: return "folding";
    case StepKind::AssumptionIntroduction: return "assumption-introduction";
    case StepKind::Subsumption: return "subsumption";
  }
  return "unknown";
}

std::string to_string(const TraceEntry& entry) {
  auto rules = [](const std::vector<Rule>& rs) {
    std::string s;
    for (const auto& r : rs) {
      if (!s.empty()) s += ' ';
      s += "[" + std::to_string(r.id) + "] " + to_string(r);
    }
    return s.empty() ? std::string("-") : s;
  };
  std::string s = to_string(entry.kind);
  s += " | consumed: " + rules(entry.consumed);
  s += " | produced: " + rules(entry.produced);
  if (entry.assumption) s += " | " + to_string(*entry.assumption);
  if (!entry.evidence.empty()) s += " | evidence: " + entry.evidence;
  return s;
}

AbaFramework replay(const AbaFramework& background, const LearnTrace& trace) {
  AbaFramework f = background;
  for (const auto& e : trace) {
    for (const auto& r : e.consumed) {
      if (!f.remove_rule(r.id)) throw Error("trace consumes missing rule " + std::to_string(r.id));
    }
    if (e.assumption) f.add_assumption(*e.assumption);
    for (const auto& r : e.produced) f.insert_rule(r);
  }
  return f;
}

}  // namespace abalearn
