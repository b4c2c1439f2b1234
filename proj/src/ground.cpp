#include "abalearn/ground.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "abalearn/error.hpp"

namespace abalearn {

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const NormalRule& rule) {
  std::vector<std::string> body;
  for (const auto& eq : rule.eqs) body.push_back(to_string(eq));
  for (const auto& a : rule.pos) body.push_back(to_string(a));
  for (const auto& a : rule.neg) body.push_back("not " + to_string(a));
  std::string s = rule.head ? to_string(*rule.head) : std::string();
  if (!body.empty()) {
    s += rule.head ? " :- " : ":- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) s += ", ";
      s += body[i];
    }
  }
  s += '.';
  return s;
}

std::string to_asp_text(const std::vector<NormalRule>& program) {
  std::string out;
  for (const auto& r : program) {
    out += to_string(r);
    out += '\n';
  }
  return out;
}

std::set<std::string> constants_of(const std::vector<NormalRule>& program) {
  std::set<std::string> out;
  auto add = [&](const Atom& a) {
    for (const auto& t : a.args) {
      if (t.is_constant()) out.insert(t.name());
    }
  };
  for (const auto& r : program) {
    if (r.head) add(*r.head);
    for (const auto& eq : r.eqs) out.insert(eq.value().name());
    for (const auto& a : r.pos) add(a);
    for (const auto& a : r.neg) add(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// GroundProgram / Interpretation

AtomId GroundProgram::intern(const Atom& atom) {
  auto [it, inserted] = index_.emplace(to_string(atom), static_cast<AtomId>(atoms_.size()));
  if (inserted) atoms_.push_back(atom);
  return it->second;
}

std::optional<AtomId> GroundProgram::find(const Atom& atom) const {
  auto it = index_.find(to_string(atom));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void GroundProgram::add_rule(GroundRule rule) {
  auto check = [&](AtomId id) {
    if (id >= atoms_.size()) throw std::out_of_range("ground rule references unknown atom");
  };
  if (rule.head) check(*rule.head);
  std::for_each(rule.pos.begin(), rule.pos.end(), check);
  std::for_each(rule.neg.begin(), rule.neg.end(), check);
  rules_.push_back(std::move(rule));
}

void GroundProgram::add(std::optional<std::string> head, std::vector<std::string> pos,
                        std::vector<std::string> neg) {
  GroundRule r;
  if (head) r.head = intern(Atom(*head));
  for (auto& p : pos) r.pos.push_back(intern(Atom(std::move(p))));
  for (auto& n : neg) r.neg.push_back(intern(Atom(std::move(n))));
  add_rule(std::move(r));
}

std::string to_string(const GroundProgram& program, const GroundRule& rule) {
  NormalRule r;
  if (rule.head) r.head = program.atom(*rule.head);
  for (AtomId id : rule.pos) r.pos.push_back(program.atom(id));
  for (AtomId id : rule.neg) r.neg.push_back(program.atom(id));
  return to_string(r);
}

Interpretation::Interpretation(std::vector<AtomId> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool Interpretation::contains(AtomId id) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), id);
}

bool Interpretation::subset_of(const Interpretation& other) const {
  return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
}

Interpretation intersect(const Interpretation& a, const Interpretation& b) {
  std::vector<AtomId> out;
  std::set_intersection(a.atoms().begin(), a.atoms().end(), b.atoms().begin(), b.atoms().end(),
                        std::back_inserter(out));
  return Interpretation(std::move(out));
}

std::set<Atom> atoms_of(const GroundProgram& program, const Interpretation& i) {
  std::set<Atom> out;
  for (AtomId id : i.atoms()) out.insert(program.atom(id));
  return out;
}

// ---------------------------------------------------------------------------
// Instantiation

namespace {

using Binding = std::map<std::string, std::string>;

Atom substitute(const Atom& atom, const Binding& b) {
  Atom out(atom.predicate);
  out.args.reserve(atom.args.size());
  for (const auto& t : atom.args) {
    if (t.is_variable()) {
      auto it = b.find(t.name());
      out.args.push_back(it == b.end() ? t : Term::constant(it->second));
    } else {
      out.args.push_back(t);
    }
  }
  return out;
}

// Extends `b` so that `pattern` instantiates to `fact`.
bool match(const Atom& pattern, const Atom& fact, Binding& b) {
  if (pattern.predicate != fact.predicate || pattern.arity() != fact.arity()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const std::string& c = fact.args[i].name();
    if (p.is_constant()) {
      if (p.name() != c) return false;
      continue;
    }
    auto [it, inserted] = b.emplace(p.name(), c);
    if (!inserted && it->second != c) return false;
  }
  return true;
}

// Rule after equality resolution.
struct Prepared {
  std::optional<Atom> head;
  std::vector<Atom> pos;
  std::vector<Atom> neg;
};

std::optional<Prepared> prepare(const NormalRule& rule) {
  Binding b;
  for (const auto& eq : rule.eqs) {
    auto [it, inserted] = b.emplace(eq.var().name(), eq.value().name());
    if (!inserted && it->second != eq.value().name()) return std::nullopt;  // X = a, X = b
  }
  Prepared p;
  if (rule.head) p.head = substitute(*rule.head, b);
  for (const auto& a : rule.pos) p.pos.push_back(substitute(a, b));
  for (const auto& a : rule.neg) p.neg.push_back(substitute(a, b));

  std::set<std::string> bound;
  for (const auto& a : p.pos) {
    for (const auto& t : a.args) {
      if (t.is_variable()) bound.insert(t.name());
    }
  }
  auto check = [&](const Atom& a) {
    for (const auto& t : a.args) {
      if (t.is_variable() && !bound.count(t.name())) {
        throw UnsafeRule("unsafe rule (variable " + t.name() + "): " + to_string(rule));
      }
    }
  };
  if (p.head) check(*p.head);
  std::for_each(p.neg.begin(), p.neg.end(), check);
  return p;
}

bool has_variables(const Prepared& p) {
  auto nonground = [](const Atom& a) { return !a.is_ground(); };
  return (p.head && !p.head->is_ground()) || std::any_of(p.pos.begin(), p.pos.end(), nonground);
}

class FactStore {
 public:
  bool insert(const Atom& a) {
    if (!keys_.insert(to_string(a)).second) return false;
    by_pred_[a.predicate].push_back(a);
    all_.push_back(a);
    return true;
  }
  const std::vector<Atom>& all() const { return all_; }
  bool contains(const Atom& a) const { return keys_.count(to_string(a)) > 0; }
  const std::vector<Atom>& with_predicate(const std::string& p) const {
    static const std::vector<Atom> kEmpty;
    auto it = by_pred_.find(p);
    return it == by_pred_.end() ? kEmpty : it->second;
  }

 private:
  std::unordered_set<std::string> keys_;
  std::unordered_map<std::string, std::vector<Atom>> by_pred_;
  std::vector<Atom> all_;
};

// Enumerates bindings that map every positive body atom into the stores.
// Atom `delta_at` (if any) must be matched in `delta`, the others in `full`.
template <typename Fn>
void join(const std::vector<Atom>& pos, std::size_t k, Binding& b, const FactStore& full,
          const FactStore* delta, std::size_t delta_at, Fn&& emit) {
  if (k == pos.size()) {
    emit(b);
    return;
  }
  const FactStore& store = (delta != nullptr && k == delta_at) ? *delta : full;
  for (const Atom& fact : store.with_predicate(pos[k].predicate)) {
    Binding next = b;
    if (!match(pos[k], fact, next)) continue;
    join(pos, k + 1, next, full, delta, delta_at, emit);
  }
}

}  // namespace

GroundProgram ground(const std::vector<NormalRule>& program, const std::set<std::string>& constants) {
  std::vector<std::optional<Prepared>> prepared;
  prepared.reserve(program.size());
  for (const auto& r : program) prepared.push_back(prepare(r));

  if (constants.empty()) {
    for (std::size_t i = 0; i < program.size(); ++i) {
      if (prepared[i] && has_variables(*prepared[i])) {
        throw EmptyUniverse("rule has variables but there are no constants: " + to_string(program[i]));
      }
    }
  }

  // Positive over-approximation: derive heads ignoring negative bodies.
  FactStore derived;
  FactStore delta;
  for (const auto& p : prepared) {
    if (p && p->head && p->pos.empty()) {
      if (derived.insert(*p->head)) delta.insert(*p->head);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    FactStore next_delta;
    for (const auto& p : prepared) {
      if (!p || !p->head || p->pos.empty()) continue;
      for (std::size_t i = 0; i < p->pos.size(); ++i) {
        Binding b;
        join(p->pos, 0, b, derived, &delta, i, [&](const Binding& bb) {
          Atom h = substitute(*p->head, bb);
          if (!derived.contains(h)) next_delta.insert(h);
        });
      }
    }
    // Insert only after the round so joins above see a stable store.
    for (const Atom& a : next_delta.all()) {
      if (derived.insert(a)) grew = true;
    }
    delta = std::move(next_delta);
  }

  GroundProgram out;
  std::unordered_set<std::string> emitted;
  for (const auto& p : prepared) {
    if (!p) continue;
    Binding b;
    join(p->pos, 0, b, derived, nullptr, 0, [&](const Binding& bb) {
      NormalRule inst;
      if (p->head) inst.head = substitute(*p->head, bb);
      for (const auto& a : p->pos) inst.pos.push_back(substitute(a, bb));
      for (const auto& a : p->neg) inst.neg.push_back(substitute(a, bb));
      if (!emitted.insert(to_string(inst)).second) return;
      GroundRule g;
      if (inst.head) g.head = out.intern(*inst.head);
      for (const auto& a : inst.pos) g.pos.push_back(out.intern(a));
      for (const auto& a : inst.neg) g.neg.push_back(out.intern(a));
      out.add_rule(std::move(g));
    });
  }
  return out;
}

}  // namespace abalearn
