#include "abalearn/solve.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>

#include "abalearn/error.hpp"

namespace abalearn {

GroundProgram reduct(const GroundProgram& program, const Interpretation& i) {
  GroundProgram out;
  for (std::size_t a = 0; a < program.num_atoms(); ++a) out.intern(program.atom(static_cast<AtomId>(a)));
  for (const auto& r : program.rules()) {
    bool blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId n) { return i.contains(n); });
    if (blocked) continue;
    out.add_rule(GroundRule{r.head, r.pos, {}});
  }
  return out;
}

namespace {

// Least model of the rules selected by `usable`, ignoring negative bodies.
template <typename Usable>
std::vector<char> least_fixpoint(const GroundProgram& p, Usable usable) {
  const auto& rules = p.rules();
  std::vector<char> in(p.num_atoms(), 0);
  std::vector<std::size_t> missing(rules.size(), 0);
  std::vector<std::vector<std::size_t>> watch(p.num_atoms());
  std::deque<AtomId> queue;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const auto& r = rules[k];
    if (!r.head || !usable(r)) continue;
    missing[k] = r.pos.size();
    for (AtomId a : r.pos) watch[a].push_back(k);
    if (r.pos.empty() && !in[*r.head]) {
      in[*r.head] = 1;
      queue.push_back(*r.head);
    }
  }
  while (!queue.empty()) {
    AtomId a = queue.front();
    queue.pop_front();
    for (std::size_t k : watch[a]) {
      // An atom may occur twice in one body; each occurrence was counted.
      if (--missing[k] == 0) {
        AtomId h = *rules[k].head;
        if (!in[h]) {
          in[h] = 1;
          queue.push_back(h);
        }
      }
    }
  }
  return in;
}

}  // namespace

Interpretation least_model(const GroundProgram& program) {
  auto in = least_fixpoint(program, [](const GroundRule&) { return true; });
  std::vector<AtomId> out;
  for (std::size_t a = 0; a < in.size(); ++a) {
    if (in[a]) out.push_back(static_cast<AtomId>(a));
  }
  return Interpretation(std::move(out));
}

bool is_answer_set(const GroundProgram& program, const Interpretation& i) {
  auto in = least_fixpoint(program, [&](const GroundRule& r) {
    return std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId n) { return i.contains(n); });
  });
  for (std::size_t a = 0; a < in.size(); ++a) {
    if (static_cast<bool>(in[a]) != i.contains(static_cast<AtomId>(a))) return false;
  }
  for (const auto& r : program.rules()) {
    if (!r.is_constraint()) continue;
    bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return i.contains(a); }) &&
                std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return i.contains(a); });
    if (body) return false;
  }
  return true;
}

namespace {

enum Value : std::uint8_t { kUnknown = 0, kTrue = 1, kFalse = 2 };
using Assignment = std::vector<std::uint8_t>;

class Search {
 public:
  explicit Search(const GroundProgram& p) : p_(p), support_(p.num_atoms()), guess_(p.num_atoms(), 0) {
    for (std::size_t k = 0; k < p.rules().size(); ++k) {
      const auto& r = p.rules()[k];
      if (r.head) support_[*r.head].push_back(k);
      for (AtomId n : r.neg) guess_[n] = 1;
    }
  }

  std::size_t num_atoms() const { return p_.num_atoms(); }

  // Extends `a` by sound inferences. Returns false on conflict.
  bool propagate(Assignment& a) const {
    for (;;) {
      bool changed = false;
      bool ok = true;
      auto set = [&](AtomId x, Value v) {
        if (a[x] == v) return;
        if (a[x] != kUnknown) {
          ok = false;
          return;
        }
        a[x] = v;
        changed = true;
      };

      // Atoms derivable whatever the undecided atoms turn out to be.
      auto lower = least_fixpoint(p_, [&](const GroundRule& r) {
        return std::all_of(r.neg.begin(), r.neg.end(), [&](AtomId n) { return a[n] == kFalse; });
      });
      // Atoms that might still be derivable.
      auto upper = least_fixpoint(p_, [&](const GroundRule& r) {
        return std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId n) { return a[n] == kTrue; }) &&
               std::none_of(r.pos.begin(), r.pos.end(), [&](AtomId x) { return a[x] == kFalse; });
      });
      for (std::size_t x = 0; x < a.size() && ok; ++x) {
        if (lower[x]) set(static_cast<AtomId>(x), kTrue);
        if (!upper[x]) set(static_cast<AtomId>(x), kFalse);
      }
      if (!ok) return false;

      for (const auto& r : p_.rules()) {
        bool head_false = !r.head || a[*r.head] == kFalse;
        std::size_t open = 0;
        std::int64_t last = -1;
        bool last_neg = false;
        bool falsified = false;
        for (AtomId x : r.pos) {
          if (a[x] == kFalse) falsified = true;
          else if (a[x] == kUnknown) { ++open; last = x; last_neg = false; }
        }
        for (AtomId x : r.neg) {
          if (a[x] == kTrue) falsified = true;
          else if (a[x] == kUnknown) { ++open; last = x; last_neg = true; }
        }
        if (falsified) continue;
        if (open == 0) {
          if (head_false) return false;
          set(*r.head, kTrue);
        } else if (open == 1 && head_false) {
          set(static_cast<AtomId>(last), last_neg ? kTrue : kFalse);
        }
        if (!ok) return false;
      }

      for (std::size_t x = 0; x < a.size(); ++x) {
        if (a[x] != kTrue) continue;
        std::int64_t only = -1;
        std::size_t alive = 0;
        for (std::size_t k : support_[x]) {
          const auto& r = p_.rules()[k];
          bool dead = std::any_of(r.pos.begin(), r.pos.end(), [&](AtomId y) { return a[y] == kFalse; }) ||
                      std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId y) { return a[y] == kTrue; });
          if (!dead) {
            ++alive;
            only = static_cast<std::int64_t>(k);
          }
        }
        if (alive == 0) return false;
        if (alive == 1) {
          const auto& r = p_.rules()[static_cast<std::size_t>(only)];
          for (AtomId y : r.pos) set(y, kTrue);
          for (AtomId y : r.neg) set(y, kFalse);
          if (!ok) return false;
        }
      }

      if (!changed) return true;
    }
  }

  std::optional<AtomId> choose(const Assignment& a) const {
    std::optional<AtomId> fallback;
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (a[x] != kUnknown) continue;
      if (guess_[x]) return static_cast<AtomId>(x);
      if (!fallback) fallback = static_cast<AtomId>(x);
    }
    return fallback;
  }

  Interpretation to_interpretation(const Assignment& a) const {
    std::vector<AtomId> out;
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (a[x] == kTrue) out.push_back(static_cast<AtomId>(x));
    }
    return Interpretation(std::move(out));
  }

  // Depth-first search below `a`. `visit` returns false to stop.
  template <typename Visit>
  bool run(Assignment a, Visit& visit) const {
    if (!propagate(a)) return true;
    auto x = choose(a);
    if (!x) {
      Interpretation i = to_interpretation(a);
      if (!is_answer_set(p_, i)) return true;
      return visit(i);
    }
    for (Value v : {kFalse, kTrue}) {
      Assignment next = a;
      next[*x] = v;
      if (!run(std::move(next), visit)) return false;
    }
    return true;
  }

  const GroundProgram& program() const { return p_; }

 private:
  const GroundProgram& p_;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<char> guess_;
};

}  // namespace

AnswerSetReport answer_sets(const GroundProgram& program, std::size_t limit) {
  AnswerSetReport report;
  Search search(program);
  auto visit = [&](const Interpretation& i) {
    if (report.answer_sets.size() == limit) {
      report.truncated = true;
      return false;
    }
    report.answer_sets.push_back(i);
    return true;
  };
  search.run(Assignment(program.num_atoms(), kUnknown), visit);
  std::sort(report.answer_sets.begin(), report.answer_sets.end());
  report.satisfiable = !report.answer_sets.empty();
  if (report.satisfiable && !report.truncated) {
    Interpretation c = report.answer_sets.front();
    for (const auto& i : report.answer_sets) c = intersect(c, i);
    report.cautious = std::move(c);
  }
  return report;
}

namespace {

// Union-find over atom ids.
class Components {
 public:
  explicit Components(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::optional<Interpretation> cautious(const GroundProgram& program, std::size_t limit) {
  Search search(program);
  const std::size_t n = program.num_atoms();

  Assignment root(n, kUnknown);
  if (!search.propagate(root)) return std::nullopt;

  std::size_t found = 0;
  auto count = [&] {
    if (++found > limit) {
      throw EnumerationTruncated("cautious reasoning exceeded " + std::to_string(limit) + " answer sets");
    }
  };

  std::optional<Interpretation> first;
  auto take_first = [&](const Interpretation& i) {
    first = i;
    return false;
  };
  search.run(root, take_first);
  if (!first) return std::nullopt;
  count();

  // Atoms whose value is fixed at the root independently of any choice.
  auto derived = least_fixpoint(program, [&](const GroundRule& r) {
    return std::all_of(r.neg.begin(), r.neg.end(), [&](AtomId x) { return root[x] == kFalse; });
  });
  std::vector<char> settled(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    settled[x] = root[x] == kFalse || (root[x] == kTrue && derived[x]);
  }

  // Unsettled atoms sharing a live rule belong to the same component.
  Components comp(n);
  for (const auto& r : program.rules()) {
    bool dead = std::any_of(r.pos.begin(), r.pos.end(), [&](AtomId y) { return root[y] == kFalse; }) ||
                std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId y) { return root[y] == kTrue; });
    if (dead) continue;
    if (r.head && settled[*r.head] && root[*r.head] == kTrue) continue;
    std::optional<AtomId> anchor;
    auto link = [&](AtomId y) {
      if (settled[y]) return;
      if (anchor) comp.unite(*anchor, y);
      else anchor = y;
    };
    if (r.head) link(*r.head);
    std::for_each(r.pos.begin(), r.pos.end(), link);
    std::for_each(r.neg.begin(), r.neg.end(), link);
  }

  Interpretation candidates = *first;
  std::vector<AtomId> pending;
  for (AtomId x : first->atoms()) {
    if (!settled[x]) pending.push_back(x);
  }

  for (AtomId c : pending) {
    if (!candidates.contains(c)) continue;
    // Fix every atom outside c's component to its value in the first model.
    Assignment a = root;
    const std::size_t k = comp.find(c);
    for (std::size_t x = 0; x < n; ++x) {
      if (settled[x] || comp.find(x) == k) continue;
      a[x] = first->contains(static_cast<AtomId>(x)) ? kTrue : kFalse;
    }
    a[c] = kFalse;
    std::optional<Interpretation> witness;
    auto take = [&](const Interpretation& i) {
      witness = i;
      return false;
    };
    search.run(std::move(a), take);
    if (witness) {
      count();
      candidates = intersect(candidates, *witness);
    }
  }
  return candidates;
}

std::optional<std::set<Atom>> EmbeddedReasoner::cautious(const std::vector<NormalRule>& program) {
  GroundProgram g = ground(program, constants_of(program));
  auto c = abalearn::cautious(g, limit_);
  if (!c) return std::nullopt;
  return atoms_of(g, *c);
}

}  // namespace abalearn
