#include "abalearn/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "abalearn/ground.hpp"

namespace abalearn {

namespace {

// Fresh predicate names for the helper domain used while grounding.
std::string unused_name(const std::set<std::string>& taken, const std::string& base) {
  std::string name = base;
  for (int i = 0; taken.count(name); ++i) name = base + "_" + std::to_string(i);
  return name;
}

void for_each_tuple(const std::vector<std::string>& consts, std::size_t n,
                    const std::function<void(const std::vector<Term>&)>& fn) {
  std::vector<Term> tuple;
  std::function<void()> rec = [&] {
    if (tuple.size() == n) {
      fn(tuple);
      return;
    }
    for (const auto& c : consts) {
      tuple.push_back(Term::constant(c));
      rec();
      tuple.pop_back();
    }
  };
  rec();
}

}  // namespace

GroundAba ground_framework(const AbaFramework& f) {
  GroundAba out;
  const std::set<std::string> cs = f.constants();
  const std::vector<std::string> consts(cs.begin(), cs.end());
  const std::string dom = unused_name(f.predicates(), "dom");
  const std::string tag = unused_name(f.predicates(), "rule");

  for (const auto& s : f.assumptions()) {
    for_each_tuple(consts, s.arity, [&](const std::vector<Term>& t) {
      Atom a(s.predicate, t);
      out.contrary.emplace(a, Atom(s.contrary, t));
      out.assumptions.push_back(std::move(a));
    });
  }

  // Each instance carries its source id through an extra body atom so the
  // generic grounder can be reused.
  std::vector<NormalRule> prog;
  for (const auto& r : f.rules()) {
    NormalRule n;
    n.head = r.head;
    n.eqs = r.eqs;
    n.pos = r.atoms;
    n.pos.insert(n.pos.end(), r.asms.begin(), r.asms.end());
    n.pos.emplace_back(tag, std::vector<Term>{Term::constant("r" + std::to_string(r.id))});
    prog.push_back(std::move(n));
    prog.push_back({Atom(tag, {Term::constant("r" + std::to_string(r.id))}), {}, {}, {}});
  }
  for (const auto& s : f.assumptions()) {
    NormalRule n;
    std::vector<Term> xs;
    for (std::size_t i = 0; i < s.arity; ++i) {
      xs.push_back(Term::variable(positional_variable(i)));
      n.pos.emplace_back(dom, std::vector<Term>{xs.back()});
    }
    n.head = Atom(s.predicate, xs);
    prog.push_back(std::move(n));
  }
  for (const auto& c : consts) prog.push_back({Atom(dom, {Term::constant(c)}), {}, {}, {}});

  std::set<std::string> all = cs;
  for (const auto& r : f.rules()) all.insert("r" + std::to_string(r.id));
  const GroundProgram gp = ground(prog, all);
  for (const auto& g : gp.rules()) {
    if (!g.head || g.pos.empty()) continue;
    const Atom& last = gp.atom(g.pos.back());
    if (last.predicate != tag) continue;
    GroundAbaRule r;
    r.source = static_cast<RuleId>(std::stoul(last.args[0].name().substr(1)));
    r.head = gp.atom(*g.head);
    for (std::size_t i = 0; i + 1 < g.pos.size(); ++i) r.body.push_back(gp.atom(g.pos[i]));
    out.rules.push_back(std::move(r));
  }
  return out;
}

namespace {

struct Closure {
  std::map<Atom, std::size_t> why;  // derived atom -> index of deriving rule, or npos for assumptions
};

Closure derive(const GroundAba& g, const std::set<Atom>& support) {
  Closure c;
  for (const auto& a : support) c.why.emplace(a, std::string::npos);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < g.rules.size(); ++k) {
      const auto& r = g.rules[k];
      if (c.why.count(r.head)) continue;
      bool ok = std::all_of(r.body.begin(), r.body.end(), [&](const Atom& a) { return c.why.count(a) > 0; });
      if (ok) {
        c.why.emplace(r.head, k);
        changed = true;
      }
    }
  }
  return c;
}

void witness(const GroundAba& g, const Closure& c, const Atom& a, std::set<Atom>& seen,
             std::set<Atom>& used_asms, std::set<RuleId>& used_rules) {
  if (!seen.insert(a).second) return;
  std::size_t k = c.why.at(a);
  if (k == std::string::npos) {
    used_asms.insert(a);
    return;
  }
  used_rules.insert(g.rules[k].source);
  for (const auto& b : g.rules[k].body) witness(g, c, b, seen, used_asms, used_rules);
}

std::vector<std::set<Atom>> subsets(const std::vector<Atom>& xs, std::size_t max) {
  if (xs.size() > max) {
    throw std::invalid_argument("oracle limited to " + std::to_string(max) + " assumptions, got " +
                                std::to_string(xs.size()));
  }
  std::vector<std::set<Atom>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    std::set<Atom> s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if ((mask >> i) & 1u) s.insert(xs[i]);
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

bool attacks(const GroundAba& g, const Argument& a, const Argument& b) {
  return std::any_of(b.support.begin(), b.support.end(), [&](const Atom& x) {
    auto it = g.contrary.find(x);
    return it != g.contrary.end() && it->second == a.claim;
  });
}

}  // namespace

std::vector<Argument> enumerate_arguments(const GroundAba& g, std::size_t max_assumptions) {
  std::vector<Argument> out;
  for (const auto& s : subsets(g.assumptions, max_assumptions)) {
    const Closure c = derive(g, s);
    for (const auto& [claim, _] : c.why) {
      const bool covered = std::any_of(out.begin(), out.end(), [&](const Argument& a) {
        return a.claim == claim && std::includes(s.begin(), s.end(), a.support.begin(), a.support.end());
      });
      if (covered) continue;
      Argument arg;
      arg.claim = claim;
      std::set<Atom> seen;
      witness(g, c, claim, seen, arg.support, arg.rules_used);
      // The witness derivation may use fewer assumptions than the subset;
      // then a smaller subset already produced this claim.
      if (arg.support != s) continue;
      out.push_back(std::move(arg));
    }
  }
  return out;
}

std::vector<Extension> stable_extensions(const GroundAba& g, std::size_t max_assumptions) {
  const std::vector<Argument> args = enumerate_arguments(g, max_assumptions);
  std::vector<Extension> out;
  for (const auto& s : subsets(g.assumptions, max_assumptions)) {
    std::vector<const Argument*> in, rest;
    for (const auto& a : args) {
      (std::includes(s.begin(), s.end(), a.support.begin(), a.support.end()) ? in : rest).push_back(&a);
    }
    bool conflict_free = true;
    for (const Argument* a : in) {
      for (const Argument* b : in) conflict_free = conflict_free && !attacks(g, *a, *b);
    }
    if (!conflict_free) continue;
    bool total = std::all_of(rest.begin(), rest.end(), [&](const Argument* b) {
      return std::any_of(in.begin(), in.end(), [&](const Argument* a) { return attacks(g, *a, *b); });
    });
    if (!total) continue;
    Extension e;
    e.assumptions = s;
    for (const Argument* a : in) e.claims.insert(a->claim);
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<std::set<Atom>> cautious_claims(const GroundAba& g, std::size_t max_assumptions) {
  auto exts = stable_extensions(g, max_assumptions);
  if (exts.empty()) return std::nullopt;
  std::set<Atom> c = exts.front().claims;
  for (const auto& e : exts) {
    std::set<Atom> keep;
    std::set_intersection(c.begin(), c.end(), e.claims.begin(), e.claims.end(), std::inserter(keep, keep.end()));
    c = std::move(keep);
  }
  return c;
}

}  // namespace abalearn
