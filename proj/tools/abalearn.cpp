// Command-line front end: learn, encode, solve, check, oracle.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "abalearn/encode.hpp"
#include "abalearn/error.hpp"
#include "abalearn/external.hpp"
#include "abalearn/oracle.hpp"
#include "abalearn/parse.hpp"
#include "abalearn/solve.hpp"
#include "abalearn/strategy.hpp"

namespace {

using namespace abalearn;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses a problem file or reports diagnostics and throws.
ProblemDocument load_problem(const std::string& path) {
  ParseResult r = parse_problem(read_file(path));
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) std::cerr << path << ":" << to_string(d) << "\n";
    throw UsageError{};
  }
  return std::move(r.document);
}

std::string join(const std::set<Atom>& atoms) {
  std::vector<std::string> names;
  for (const auto& a : atoms) names.push_back(to_string(a));
  std::sort(names.begin(), names.end());
  std::string s;
  for (const auto& n : names) {
    if (!s.empty()) s += ' ';
    s += n;
  }
  return s;
}

DomMode dom_mode(const std::string& s) { return s == "global" ? DomMode::GlobalDom : DomMode::BodyCover; }

struct LearnOptions {
  std::string file;
  bool trace = false;
  std::string trace_out;
  std::size_t fold_bound = 5;
  std::size_t max_gen_iter = 50;
  std::size_t enum_limit = kDefaultEnumLimit;
  std::string backend = "embedded";
  std::string solver_cmd;
  std::string dom_mode = "body";
};

std::string solver_command(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kSolverEnv)) return env;
  throw UsageError{"the external backend needs --solver-cmd or " + std::string(kSolverEnv)};
}

int run_learn(const LearnOptions& o) {
  ProblemDocument doc = load_problem(o.file);
  StrategyConfig cfg;
  cfg.fold_bound = o.fold_bound;
  cfg.max_gen_iterations = o.max_gen_iter;
  cfg.enum_limit = o.enum_limit;
  cfg.encoding.dom_mode = dom_mode(o.dom_mode);
  cfg.encoding.guards = doc.guards;

  std::unique_ptr<Reasoner> reasoner;
  if (o.backend == "external") {
    reasoner = std::make_unique<ExternalReasoner>(solver_command(o.solver_cmd));
  } else {
    reasoner = std::make_unique<EmbeddedReasoner>(o.enum_limit);
  }
  LearnResult result = learn(doc.problem, cfg, *reasoner);

  ProblemDocument out = doc;
  out.problem.framework = result.framework;
  std::cout << serialize(out);
  std::cout << "\n% outcome: " << to_string(result.outcome) << "\n";
  if (!result.message.empty()) std::cout << "% reason: " << result.message << "\n";
  if (o.trace) {
    std::cout << "% trace:\n";
    for (const auto& e : result.trace) std::cout << "% " << to_string(e) << "\n";
  }
  if (!o.trace_out.empty()) {
    std::ofstream f(o.trace_out);
    for (const auto& e : result.trace) f << to_string(e) << "\n";
    if (!f) throw UsageError{"cannot write " + o.trace_out};
  }
  return result.outcome == Outcome::Solution ? kOk : kFailed;
}

int run_encode(const std::string& file, const std::string& variant, const std::string& k,
               const std::string& mode) {
  ProblemDocument doc = load_problem(file);
  EncodingConfig cfg;
  cfg.dom_mode = dom_mode(mode);
  cfg.guards = doc.guards;
  std::vector<std::string> ks;
  if (k == "all") {
    ks = all_assumptions(doc.problem.framework);
  } else {
    std::stringstream ss(k);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) ks.push_back(item);
    }
  }
  Variant v = variant == "base" ? Variant::Base : variant == "plus" ? Variant::Plus : Variant::Star;
  const auto& p = doc.problem;
  std::cout << to_asp_text(encode(v, p.framework, p.pos, p.neg, ks, cfg));
  return kOk;
}

int run_solve(const std::string& file, std::size_t limit) {
  LpParseResult r = parse_lp(read_file(file));
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) std::cerr << file << ":" << to_string(d) << "\n";
    throw UsageError{};
  }
  GroundProgram gp = ground(r.program, constants_of(r.program));
  SymbolicReport rep = symbolic(gp, answer_sets(gp, limit));
  std::size_t k = 0;
  for (const auto& s : rep.answer_sets) std::cout << "Answer: " << ++k << "\n" << join(s) << "\n";
  std::cout << (rep.satisfiable ? "SATISFIABLE" : "UNSATISFIABLE") << "\n";
  if (rep.truncated) {
    std::cout << "% truncated after " << limit << " answer sets\n";
  } else if (rep.cautious) {
    std::cout << "Cautious: " << join(*rep.cautious) << "\n";
  }
  return kOk;
}

int run_check(const std::string& file) {
  ProblemDocument doc = load_problem(file);
  auto violations = validate(doc.problem);
  for (const auto& v : violations) std::cout << to_string(v.kind) << ": " << v.subject << ": " << v.message << "\n";
  return violations.empty() ? kOk : kFailed;
}

int run_oracle(const std::string& file, std::size_t max_assumptions) {
  ProblemDocument doc = load_problem(file);
  GroundAba g = ground_framework(doc.problem.framework);
  auto exts = stable_extensions(g, max_assumptions);
  if (exts.empty()) {
    std::cout << "No stable extension.\n";
    return kOk;
  }
  std::size_t k = 0;
  for (const auto& e : exts) {
    std::cout << "Extension " << ++k << "\n";
    std::cout << "  assumptions: " << join(e.assumptions) << "\n";
    std::cout << "  claims: " << join(e.claims) << "\n";
  }
  std::cout << "Cautious: " << join(*cautious_claims(g, max_assumptions)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn assumption-based argumentation frameworks from examples"};
  app.require_subcommand(1);

  LearnOptions lo;
  auto* learn_cmd = app.add_subcommand("learn", "Run the learning strategy on a problem file");
  learn_cmd->add_option("file", lo.file, "Problem file (.aba)")->required();
  learn_cmd->add_flag("--trace", lo.trace, "Print the transformation trace as comments");
  learn_cmd->add_option("--trace-out", lo.trace_out, "Write the transformation trace to a file");
  learn_cmd->add_option("--fold-bound", lo.fold_bound, "Alternatives tried per folding step")
      ->check(CLI::PositiveNumber);
  learn_cmd->add_option("--max-gen-iter", lo.max_gen_iter, "Generalisation iteration cap")
      ->check(CLI::PositiveNumber);
  learn_cmd->add_option("--enum-limit", lo.enum_limit, "Answer-set enumeration limit")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--backend", lo.backend, "Answer-set backend")
      ->check(CLI::IsMember({"embedded", "external"}));
  learn_cmd->add_option("--solver-cmd", lo.solver_cmd, "External solver command with a {file} placeholder");
  learn_cmd->add_option("--dom-mode", lo.dom_mode, "Guard selection")->check(CLI::IsMember({"body", "global"}));

  std::string enc_file, variant = "base", k, enc_mode = "body";
  auto* encode_cmd = app.add_subcommand("encode", "Print the logic-program encoding of a problem");
  encode_cmd->add_option("file", enc_file, "Problem file (.aba)")->required();
  encode_cmd->add_option("--variant", variant, "Encoding variant")->check(CLI::IsMember({"base", "plus", "star"}));
  encode_cmd->add_option("--k", k, "Assumptions with contrary guesses: comma-separated names or 'all'");
  encode_cmd->add_option("--dom-mode", enc_mode, "Guard selection")->check(CLI::IsMember({"body", "global"}));

  std::string lp_file;
  std::size_t solve_limit = kDefaultEnumLimit;
  auto* solve_cmd = app.add_subcommand("solve", "Enumerate answer sets of a logic program");
  solve_cmd->add_option("file", lp_file, "Program file (.lp)")->required();
  solve_cmd->add_option("--enum-limit", solve_limit, "Answer-set enumeration limit")->check(CLI::PositiveNumber);

  std::string check_file;
  auto* check_cmd = app.add_subcommand("check", "Validate a problem file");
  check_cmd->add_option("file", check_file, "Problem file (.aba)")->required();

  std::string oracle_file;
  std::size_t max_asms = 12;
  auto* oracle_cmd = app.add_subcommand("oracle", "Stable extensions of the ground framework");
  oracle_cmd->add_option("file", oracle_file, "Problem file (.aba)")->required();
  oracle_cmd->add_option("--max-assumptions", max_asms, "Refuse frameworks with more ground assumptions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*learn_cmd) return run_learn(lo);
    if (*encode_cmd) return run_encode(enc_file, variant, k, enc_mode);
    if (*solve_cmd) return run_solve(lp_file, solve_limit);
    if (*check_cmd) return run_check(check_file);
    if (*oracle_cmd) return run_oracle(oracle_file, max_asms);
  } catch (const UsageError& e) {
    if (!e.message.empty()) std::cerr << "error: " << e.message << "\n";
    return kUsage;
  } catch (const SolverOutputUnparseable& e) {
    std::cerr << "error: " << e.what() << "\n--- solver output ---\n" << e.raw_output;
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
