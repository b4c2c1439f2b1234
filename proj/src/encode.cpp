#include "abalearn/encode.hpp"

#include <algorithm>
#include <set>

#include "abalearn/error.hpp"

namespace abalearn {

namespace {

std::vector<Term> distinct_vars(const Atom& a) { return vars(a); }

bool covers(const Atom& atom, const Term& v) {
  return std::find(atom.args.begin(), atom.args.end(), v) != atom.args.end();
}

class Encoder {
 public:
  Encoder(const AbaFramework& f, const EncodingConfig& cfg) : f_(f), cfg_(cfg) {
    auto violations = validate(f);
    if (!violations.empty()) {
      throw ValidationFailed("framework is invalid: " + violations.front().message + " [" +
                             violations.front().subject + "]");
    }
    preds_ = f.predicates();
  }

  void base() {
    for (const auto& r : f_.rules()) {
      NormalRule n;
      n.head = r.head;
      n.eqs = r.eqs;
      n.pos = r.atoms;
      n.pos.insert(n.pos.end(), r.asms.begin(), r.asms.end());
      out_.push_back(std::move(n));
    }
    for (const auto& r : f_.rules()) {
      for (const auto& a : r.asms) {
        const auto* schema = f_.assumption(a.predicate);
        NormalRule n;
        n.head = a;
        n.pos = assumption_guard(r, a);
        n.neg = {contrary_atom(*schema, a)};
        out_.push_back(std::move(n));
      }
    }
  }

  void contrary_guesses(const std::vector<std::string>& k) {
    for (const auto& p : k) {
      if (!f_.is_assumption(p)) throw UnknownAssumption("unknown assumption predicate " + p);
    }
    for (const auto& r : f_.rules()) {
      for (const auto& a : r.asms) {
        if (std::find(k.begin(), k.end(), a.predicate) == k.end()) continue;
        const Atom c = contrary_atom(*f_.assumption(a.predicate), a);
        NormalRule guess;
        guess.head = c;
        guess.pos = assumption_guard(r, a);
        guess.neg = {a};
        out_.push_back(std::move(guess));
        NormalRule exclusive;
        exclusive.pos = {a, c};
        out_.push_back(std::move(exclusive));
      }
    }
  }

  void example_constraints(const std::vector<Atom>& pos, const std::vector<Atom>& neg) {
    for (const auto& e : pos) {
      NormalRule n;
      n.neg = {e};
      out_.push_back(std::move(n));
    }
    for (const auto& e : neg) {
      NormalRule n;
      n.pos = {e};
      out_.push_back(std::move(n));
    }
    note_constants(pos);
    note_constants(neg);
  }

  void example_guesses(const std::vector<Atom>& pos, const std::vector<Atom>& neg) {
    std::vector<std::pair<std::string, std::size_t>> preds;
    auto note = [&](const Atom& e) {
      if (f_.is_contrary(e.predicate)) return;
      std::pair<std::string, std::size_t> key{e.predicate, e.arity()};
      if (std::find(preds.begin(), preds.end(), key) == preds.end()) preds.push_back(key);
    };
    std::for_each(pos.begin(), pos.end(), note);
    std::for_each(neg.begin(), neg.end(), note);

    for (const auto& [p, arity] : preds) {
      const std::string negp = cfg_.fresh_prefix + p;
      if (preds_.count(negp)) {
        throw ValidationFailed("fresh predicate " + negp + " already occurs in the framework");
      }
      std::vector<Term> xs;
      for (std::size_t i = 0; i < arity; ++i) xs.push_back(Term::variable(positional_variable(i)));
      const Atom pa(p, xs);
      const Atom na(negp, xs);
      std::vector<Atom> guard;
      auto declared = cfg_.guards.find(p);
      for (const auto& x : xs) {
        if (cfg_.dom_mode == DomMode::BodyCover && declared != cfg_.guards.end()) {
          guard.emplace_back(declared->second, std::vector<Term>{x});
        } else {
          guard.push_back(dom_atom(x));
        }
      }
      out_.push_back(NormalRule{pa, {}, guard, {na}});
      out_.push_back(NormalRule{na, {}, guard, {pa}});
      out_.push_back(NormalRule{std::nullopt, {}, {pa, na}, {}});
    }
  }

  std::vector<NormalRule> finish() {
    if (dom_used_) {
      if (preds_.count(cfg_.dom_predicate)) {
        throw ValidationFailed("domain predicate " + cfg_.dom_predicate + " already occurs in the framework");
      }
      std::set<std::string> cs = f_.constants();
      cs.insert(extra_constants_.begin(), extra_constants_.end());
      for (const auto& c : cs) out_.push_back(NormalRule{dom_atom(Term::constant(c)), {}, {}, {}});
    }
    return std::move(out_);
  }

 private:
  Atom dom_atom(const Term& t) {
    dom_used_ = true;
    return Atom(cfg_.dom_predicate, {t});
  }

  void note_constants(const std::vector<Atom>& atoms) {
    for (const auto& a : atoms) {
      for (const auto& t : a.args) {
        if (t.is_constant()) extra_constants_.insert(t.name());
      }
    }
  }

  std::vector<Atom> assumption_guard(const Rule& host, const Atom& asm_atom) {
    const std::vector<Term> need = distinct_vars(asm_atom);
    std::vector<Atom> guard;
    if (cfg_.dom_mode == DomMode::GlobalDom) {
      for (const auto& v : need) guard.push_back(dom_atom(v));
      return guard;
    }
    auto declared = cfg_.guards.find(asm_atom.predicate);
    if (declared != cfg_.guards.end()) {
      for (const auto& v : need) guard.emplace_back(declared->second, std::vector<Term>{v});
      return guard;
    }
    // Greedy cover of the assumption's variables by host body atoms, in body order.
    std::vector<Term> open = need;
    for (const auto& atom : host.atoms) {
      if (open.empty()) break;
      auto hit = std::find_if(open.begin(), open.end(), [&](const Term& v) { return covers(atom, v); });
      if (hit == open.end()) continue;
      guard.push_back(atom);
      open.erase(std::remove_if(open.begin(), open.end(), [&](const Term& v) { return covers(atom, v); }),
                 open.end());
    }
    // Validation guarantees the body binds every assumption variable.
    for (const auto& v : open) guard.push_back(dom_atom(v));
    return guard;
  }

  const AbaFramework& f_;
  const EncodingConfig& cfg_;
  std::set<std::string> preds_;
  std::set<std::string> extra_constants_;
  std::vector<NormalRule> out_;
  bool dom_used_ = false;
};

}  // namespace

std::vector<NormalRule> encode(Variant variant, const AbaFramework& f, const std::vector<Atom>& pos,
                               const std::vector<Atom>& neg, const std::vector<std::string>& k,
                               const EncodingConfig& cfg) {
  Encoder e(f, cfg);
  e.base();
  if (variant != Variant::Base) {
    e.contrary_guesses(k);
    if (variant == Variant::Star) e.example_guesses(pos, neg);
    e.example_constraints(pos, neg);
  }
  return e.finish();
}

std::vector<NormalRule> encode_base(const AbaFramework& f, const EncodingConfig& cfg) {
  return encode(Variant::Base, f, {}, {}, {}, cfg);
}

std::vector<NormalRule> encode_plus(const AbaFramework& f, const std::vector<Atom>& pos,
                                    const std::vector<Atom>& neg, const std::vector<std::string>& k,
                                    const EncodingConfig& cfg) {
  return encode(Variant::Plus, f, pos, neg, k, cfg);
}

std::vector<NormalRule> encode_star(const AbaFramework& f, const std::vector<Atom>& pos,
                                    const std::vector<Atom>& neg, const std::vector<std::string>& k,
                                    const EncodingConfig& cfg) {
  return encode(Variant::Star, f, pos, neg, k, cfg);
}

std::vector<std::string> all_assumptions(const AbaFramework& f) {
  std::vector<std::string> out;
  for (const auto& a : f.assumptions()) out.push_back(a.predicate);
  return out;
}

bool is_synthesized(const std::string& predicate, const EncodingConfig& cfg) {
  return predicate == cfg.dom_predicate || predicate.rfind(cfg.fresh_prefix, 0) == 0;
}

}  // namespace abalearn
