#pragma once

// Translation of ABA frameworks and learning problems into normal logic
// programs whose answer sets correspond to stable extensions.

#include <map>
#include <string>
#include <vector>

#include "abalearn/ground.hpp"
#include "abalearn/model.hpp"

namespace abalearn {

enum class DomMode {
  /// Guard every variable with a synthesized unary predicate holding all constants.
  GlobalDom,
  /// Guard assumption guesses with body atoms of the hosting rule and example
  /// guesses with declared typing predicates, falling back to the synthesized one.
  BodyCover,
};

struct EncodingConfig {
  DomMode dom_mode = DomMode::BodyCover;
  std::string fresh_prefix = "neg_";
  std::string dom_predicate = "dom";
  /// Optional typing predicate per predicate, e.g. innocent -> person.
  std::map<std::string, std::string> guards;
};

enum class Variant { Base, Plus, Star };

/// The framework's rules plus, for each assumption occurring in a rule body,
///   alpha(X) :- guard, not c_alpha(X).
std::vector<NormalRule> encode_base(const AbaFramework& f, const EncodingConfig& cfg = {});

/// encode_base plus contrary guesses for the assumptions in `k` (by
/// predicate name) and one constraint per example.
std::vector<NormalRule> encode_plus(const AbaFramework& f, const std::vector<Atom>& pos,
                                    const std::vector<Atom>& neg, const std::vector<std::string>& k,
                                    const EncodingConfig& cfg = {});

/// encode_plus plus a free guess for every example predicate that is not a contrary.
std::vector<NormalRule> encode_star(const AbaFramework& f, const std::vector<Atom>& pos,
                                    const std::vector<Atom>& neg, const std::vector<std::string>& k,
                                    const EncodingConfig& cfg = {});

std::vector<NormalRule> encode(Variant variant, const AbaFramework& f, const std::vector<Atom>& pos,
                               const std::vector<Atom>& neg, const std::vector<std::string>& k,
                               const EncodingConfig& cfg = {});

/// Every assumption predicate of `f`, in declaration order.
std::vector<std::string> all_assumptions(const AbaFramework& f);

/// True for predicates the encoding may add on its own: the dom predicate
/// and anything starting with the fresh prefix.
bool is_synthesized(const std::string& predicate, const EncodingConfig& cfg);

}  // namespace abalearn
