#include "abalearn/parse.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace abalearn {

std::string to_string(const Diagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
}

namespace {

enum class Tok { Name, Variable, LParen, RParen, Comma, Dot, If, Eq, Slash, End, Bad };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct Lexed {
  std::vector<Token> tokens;
  std::map<std::size_t, std::string> comments;  // line -> trimmed comment text
};

bool name_start(char c) { return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)); }
bool var_start(char c) { return std::isupper(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Lexed lex(std::string_view text) {
  Lexed out;
  std::size_t line = 1, col = 1, i = 0;
  auto push = [&](Tok k, std::string t, std::size_t l, std::size_t c) { out.tokens.push_back({k, std::move(t), l, c}); };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '%') {
      std::size_t j = i;
      while (j < text.size() && text[j] != '\n') ++j;
      out.comments[line] = trim(text.substr(i + 1, j - i - 1));
      col += j - i;
      i = j;
      continue;
    }
    const std::size_t l = line, cc = col;
    if (name_start(c) || var_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(var_start(c) ? Tok::Variable : Tok::Name, std::string(text.substr(i, j - i)), l, cc);
      col += j - i;
      i = j;
      continue;
    }
    if (c == ':' && i + 1 < text.size() && text[i + 1] == '-') {
      push(Tok::If, ":-", l, cc);
      i += 2;
      col += 2;
      continue;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '=': k = Tok::Eq; break;
      case '/': k = Tok::Slash; break;
      default: break;
    }
    push(k, std::string(1, c), l, cc);
    ++i;
    ++col;
  }
  push(Tok::End, "", line, col);
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::Name: return "name";
    case Tok::Variable: return "variable";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::If: return "':-'";
    case Tok::Eq: return "'='";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
    case Tok::Bad: return "unexpected character";
  }
  return "token";
}

struct SyntaxError {
  Token at;
  std::string message;
};

// Shared recursive-descent machinery for both formats.
class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + ", found " + found());
    return next();
  }
  [[noreturn]] void fail(std::string message) const { throw SyntaxError{peek(), std::move(message)}; }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::Name || t.kind == Tok::Variable || t.kind == Tok::Bad) return "'" + t.text + "'";
    return describe(t.kind);
  }
  // Skips past the next '.' (or to the end) after an error.
  void recover() {
    while (!at(Tok::End) && !at(Tok::Dot)) next();
    if (at(Tok::Dot)) next();
  }

  Term term() {
    if (at(Tok::Name)) return Term::constant(next().text);
    if (at(Tok::Variable)) return Term::variable(next().text);
    fail("expected a term, found " + found());
  }

  Atom atom() {
    Token name = expect(Tok::Name, "a predicate name");
    Atom a(name.text);
    if (at(Tok::LParen)) {
      next();
      a.args.push_back(term());
      while (at(Tok::Comma)) {
        next();
        a.args.push_back(term());
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  Equality equality() {
    Token v = expect(Tok::Variable, "a variable");
    expect(Tok::Eq, "'='");
    Token c = expect(Tok::Name, "a constant");
    return Equality(v.text, c.text);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct RawRule {
  Atom head;
  std::vector<Equality> eqs;
  std::vector<Atom> body;
  bool learnt = false;
};

}  // namespace

ParseResult parse_problem(std::string_view text) {
  Lexed lx = lex(text);
  Cursor cur(lx.tokens);
  ParseResult result;
  std::vector<RawRule> raw;
  auto& prob = result.document.problem;

  auto keyword = [&](const char* kw) {
    return cur.at(Tok::Name) && cur.peek().text == kw && cur.peek(1).kind == Tok::Name;
  };

  while (!cur.at(Tok::End)) {
    try {
      if (keyword("assumption")) {
        cur.next();
        AssumptionSchema s;
        s.predicate = cur.expect(Tok::Name, "an assumption predicate").text;
        cur.expect(Tok::Slash, "'/'");
        Token n = cur.expect(Tok::Name, "an arity");
        if (n.text.find_first_not_of("0123456789") != std::string::npos) {
          throw SyntaxError{n, "arity must be a number, found '" + n.text + "'"};
        }
        s.arity = std::stoul(n.text);
        if (!cur.at(Tok::Name) || cur.peek().text != "contrary") cur.fail("expected 'contrary', found " + cur.found());
        cur.next();
        s.contrary = cur.expect(Tok::Name, "a contrary predicate").text;
        cur.expect(Tok::Dot, "'.'");
        prob.framework.add_assumption(std::move(s));
      } else if (keyword("pos") || keyword("neg")) {
        const bool positive = cur.next().text == "pos";
        Atom a = cur.atom();
        cur.expect(Tok::Dot, "'.'");
        (positive ? prob.pos : prob.neg).push_back(std::move(a));
      } else if (keyword("guard")) {
        cur.next();
        std::string p = cur.expect(Tok::Name, "a predicate").text;
        if (!cur.at(Tok::Name) || cur.peek().text != "with") cur.fail("expected 'with', found " + cur.found());
        cur.next();
        std::string g = cur.expect(Tok::Name, "a typing predicate").text;
        cur.expect(Tok::Dot, "'.'");
        result.document.guards[p] = g;
      } else {
        RawRule r;
        r.head = cur.atom();
        if (cur.at(Tok::If)) {
          cur.next();
          do {
            if (cur.at(Tok::Variable)) {
              r.eqs.push_back(cur.equality());
            } else {
              r.body.push_back(cur.atom());
            }
          } while (cur.at(Tok::Comma) && (cur.next(), true));
        }
        Token dot = cur.expect(Tok::Dot, "',' or '.'");
        auto c = lx.comments.find(dot.line);
        r.learnt = c != lx.comments.end() && c->second == "learnt";
        raw.push_back(std::move(r));
      }
    } catch (const SyntaxError& e) {
      result.diagnostics.push_back({e.at.line, e.at.column, e.message});
      cur.recover();
    }
  }

  for (auto& r : raw) {
    Rule rule;
    rule.head = std::move(r.head);
    rule.eqs = std::move(r.eqs);
    for (auto& a : r.body) {
      (prob.framework.is_assumption(a.predicate) ? rule.asms : rule.atoms).push_back(std::move(a));
    }
    rule.provenance = r.learnt ? Provenance::Learnt : Provenance::Background;
    prob.framework.add_rule(std::move(rule));
  }
  return result;
}

std::string serialize(const ProblemDocument& doc) {
  const auto& p = doc.problem;
  std::string out;
  for (const auto& a : p.framework.assumptions()) out += to_string(a) + "\n";
  for (const auto& [pred, guard] : doc.guards) out += "guard " + pred + " with " + guard + ".\n";
  if (!out.empty() && !p.framework.rules().empty()) out += "\n";
  for (const auto& r : p.framework.rules()) {
    out += to_string(r);
    if (r.is_learnt()) out += "  % learnt";
    out += "\n";
  }
  if (!p.pos.empty() || !p.neg.empty()) out += "\n";
  for (const auto& e : p.pos) out += "pos " + to_string(e) + ".\n";
  for (const auto& e : p.neg) out += "neg " + to_string(e) + ".\n";
  return out;
}

LpParseResult parse_lp(std::string_view text) {
  Lexed lx = lex(text);
  Cursor cur(lx.tokens);
  LpParseResult result;
  while (!cur.at(Tok::End)) {
    try {
      NormalRule r;
      if (!cur.at(Tok::If)) r.head = cur.atom();
      if (cur.at(Tok::If)) {
        cur.next();
        do {
          if (cur.at(Tok::Variable)) {
            r.eqs.push_back(cur.equality());
          } else if (cur.at(Tok::Name) && cur.peek().text == "not" && cur.peek(1).kind == Tok::Name) {
            cur.next();
            r.neg.push_back(cur.atom());
          } else {
            r.pos.push_back(cur.atom());
          }
        } while (cur.at(Tok::Comma) && (cur.next(), true));
      }
      cur.expect(Tok::Dot, "',' or '.'");
      result.program.push_back(std::move(r));
    } catch (const SyntaxError& e) {
      result.diagnostics.push_back({e.at.line, e.at.column, e.message});
      cur.recover();
    }
  }
  return result;
}

std::optional<Atom> parse_atom(std::string_view text) {
  Cursor cur(lex(text).tokens);
  try {
    Atom a = cur.atom();
    if (!cur.at(Tok::End)) return std::nullopt;
    return a;
  } catch (const SyntaxError&) {
    return std::nullopt;
  }
}

}  // namespace abalearn
