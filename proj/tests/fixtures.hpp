#pragma once

// Helpers shared by the test binaries.

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abalearn/parse.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(ABALEARN_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing test file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline abalearn::ProblemDocument load(const std::string& name) {
  auto r = abalearn::parse_problem(read_text(data_path(name)));
  if (!r.ok()) throw std::runtime_error("parse errors in " + name + ": " + to_string(r.diagnostics.front()));
  return r.document;
}

/// Parses one rule; `decls` supplies assumption declarations so that body
/// atoms are classified correctly.
inline abalearn::Rule rule(const std::string& text, const std::string& decls = "") {
  auto r = abalearn::parse_problem(decls + "\n" + text);
  if (!r.ok() || r.document.problem.framework.rules().empty()) throw std::runtime_error("bad rule: " + text);
  return r.document.problem.framework.rules().back();
}

inline abalearn::Atom atom(const std::string& text) {
  auto a = abalearn::parse_atom(text);
  if (!a) throw std::runtime_error("bad atom: " + text);
  return *a;
}

/// Rule text with variables renamed V0, V1, ... by first occurrence and
/// predicates renamed through `preds`.
inline std::string canonical(const abalearn::Rule& r, const std::map<std::string, std::string>& preds = {}) {
  using namespace abalearn;
  std::map<std::string, std::string> vars;
  auto term = [&](const Term& t) {
    if (!t.is_variable()) return t;
    auto [it, fresh] = vars.emplace(t.name(), "V" + std::to_string(vars.size()));
    (void)fresh;
    return Term::variable(it->second);
  };
  auto atom_of = [&](const Atom& a) {
    Atom out(a.predicate);
    if (auto p = preds.find(a.predicate); p != preds.end()) out.predicate = p->second;
    for (const auto& t : a.args) out.args.push_back(term(t));
    return out;
  };
  Rule c;
  c.head = atom_of(r.head);
  for (const auto& e : r.eqs) c.eqs.emplace_back(term(e.var()), e.value());
  for (const auto& a : r.atoms) c.atoms.push_back(atom_of(a));
  for (const auto& a : r.asms) c.asms.push_back(atom_of(a));
  return to_string(c);
}

/// Canonical texts of the learnt rules of `learnt`, with assumptions absent
/// from `background` renamed alpha1, alpha2, ... (contraries c_alpha1, ...)
/// in declaration order.
inline std::multiset<std::string> learnt_rules(const abalearn::AbaFramework& learnt,
                                               const abalearn::AbaFramework& background) {
  std::map<std::string, std::string> preds;
  std::size_t n = 0;
  for (const auto& s : learnt.assumptions()) {
    if (background.is_assumption(s.predicate)) continue;
    const std::string name = "alpha" + std::to_string(++n);
    preds[s.predicate] = name;
    preds[s.contrary] = "c_" + name;
  }
  std::multiset<std::string> out;
  for (const auto& r : learnt.rules()) {
    if (r.is_learnt()) out.insert(canonical(r, preds));
  }
  return out;
}

inline std::multiset<std::string> canonical_set(const std::vector<std::string>& rules, const std::string& decls) {
  std::multiset<std::string> out;
  for (const auto& t : rules) out.insert(canonical(rule(t, decls)));
  return out;
}

}  // namespace fixtures
