#include "abalearn/external.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "abalearn/error.hpp"
#include "abalearn/parse.hpp"

namespace abalearn {

namespace {

std::optional<std::set<Atom>> intersection_of(const std::vector<std::set<Atom>>& sets) {
  if (sets.empty()) return std::nullopt;
  std::set<Atom> c = sets.front();
  for (const auto& s : sets) {
    std::set<Atom> keep;
    std::set_intersection(c.begin(), c.end(), s.begin(), s.end(), std::inserter(keep, keep.end()));
    c = std::move(keep);
  }
  return c;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

// Splits an atom line on spaces that are outside parentheses.
std::vector<std::string> split_atoms(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ' ' || c == '\t' || c == '\r') && depth == 0) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

SymbolicReport symbolic(const GroundProgram& gp, const AnswerSetReport& report) {
  SymbolicReport out;
  for (const auto& i : report.answer_sets) out.answer_sets.push_back(atoms_of(gp, i));
  std::sort(out.answer_sets.begin(), out.answer_sets.end());
  out.satisfiable = report.satisfiable;
  out.truncated = report.truncated;
  if (report.cautious) out.cautious = atoms_of(gp, *report.cautious);
  return out;
}

SymbolicReport parse_solver_output(const std::string& output) {
  SymbolicReport out;
  std::istringstream in(output);
  std::string line;
  bool unsat = false;
  bool expect_atoms = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (expect_atoms) {
      std::set<Atom> model;
      for (const auto& text : split_atoms(line)) {
        auto a = parse_atom(text);
        if (!a) throw SolverOutputUnparseable("cannot parse atom '" + text + "' in solver output", output);
        model.insert(std::move(*a));
      }
      out.answer_sets.push_back(std::move(model));
      expect_atoms = false;
      continue;
    }
    if (line.rfind("Answer:", 0) == 0) {
      expect_atoms = true;
    } else if (line == "UNSATISFIABLE") {
      unsat = true;
    }
  }
  // An answer header on the very last line stands for an empty model.
  if (expect_atoms) out.answer_sets.emplace_back();
  if (out.answer_sets.empty() && !unsat) {
    throw SolverOutputUnparseable("solver output has neither answer sets nor UNSATISFIABLE", output);
  }
  if (!out.answer_sets.empty() && unsat) {
    throw SolverOutputUnparseable("solver output reports answer sets and UNSATISFIABLE", output);
  }
  std::sort(out.answer_sets.begin(), out.answer_sets.end());
  out.answer_sets.erase(std::unique(out.answer_sets.begin(), out.answer_sets.end()), out.answer_sets.end());
  out.satisfiable = !out.answer_sets.empty();
  out.cautious = intersection_of(out.answer_sets);
  return out;
}

SymbolicReport external_solve(const std::string& program_text, const std::string& command_template) {
  const std::string placeholder = "{file}";
  const auto at = command_template.find(placeholder);
  if (at == std::string::npos) throw SolverSpawnFailed("solver command lacks the {file} placeholder");

  std::string path = (std::filesystem::temp_directory_path() / "abalearn-XXXXXX.lp").string();
  int fd = ::mkstemps(path.data(), 3);
  if (fd < 0) throw SolverSpawnFailed("cannot create a temporary program file");
  ::close(fd);
  struct Cleanup {
    std::string p;
    ~Cleanup() { std::remove(p.c_str()); }
  } cleanup{path};
  {
    std::ofstream f(path);
    f << program_text;
    if (!f) throw SolverSpawnFailed("cannot write the temporary program file");
  }

  std::string command = command_template;
  command.replace(at, placeholder.size(), shell_quote(path));
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) throw SolverSpawnFailed("cannot start solver command: " + command);
  std::string output;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
  const int status = ::pclose(pipe);
  if (status == -1) throw SolverSpawnFailed("lost track of solver command: " + command);
  if (WIFEXITED(status) && (WEXITSTATUS(status) == 126 || WEXITSTATUS(status) == 127)) {
    throw SolverSpawnFailed("solver command could not be executed: " + command);
  }
  if (WIFSIGNALED(status)) throw SolverSpawnFailed("solver command was killed: " + command);
  return parse_solver_output(output);
}

std::optional<std::set<Atom>> ExternalReasoner::cautious(const std::vector<NormalRule>& program) {
  return external_solve(to_asp_text(program), command_).cautious;
}

}  // namespace abalearn
