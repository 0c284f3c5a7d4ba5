// Copyright 2026 The cnfdecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit status: 0 success or pass, 1 validation or
// equivalence failure, 2 usage, parse or refusal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cnfdecomp/cnfdecomp.hpp"

namespace {

using namespace cnfdecomp;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

ClauseSet load_cnf(const std::string& path) { return read_dimacs_string(slurp(path)); }

bool looks_like_gate_list(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return tok == "input" || tok == "gate" || tok == "output";
  }
  return false;
}

std::vector<int> parse_domains(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad --domains entry '" + tok + "'");
    }
  }
  return out;
}

struct Oracle {
  std::vector<int> domain_sizes;
  CheckerFunction checker;
};

Oracle parse_oracle(const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) {
    ExtensionalConstraint c = read_table_string(slurp(spec.substr(6)));
    return {c.domain_sizes(), enumeration_checker(c)};
  }
  if (spec.rfind("alldiff:", 0) == 0) {
    std::stringstream ss(spec.substr(8));
    std::string n_tok, d_tok;
    if (!std::getline(ss, n_tok, ':') || !std::getline(ss, d_tok))
      throw UsageError("expected --oracle alldiff:<n>:<d>");
    int n = 0, d = 0;
    try {
      n = std::stoi(n_tok);
      d = std::stoi(d_tok);
    } catch (const std::exception&) {
      throw UsageError("expected --oracle alldiff:<n>:<d>");
    }
    if (n < 1 || d < 1) throw UsageError("alldiff sizes must be positive");
    return {std::vector<int>(static_cast<std::size_t>(n), d), alldifferent_checker_function(static_cast<std::size_t>(n))};
  }
  throw UsageError("unknown oracle '" + spec + "' (use table:<file> or alldiff:<n>:<d>)");
}

DirectEncodingMode parse_mode(const std::string& s) {
  if (s == "auto") return DirectEncodingMode::Auto;
  if (s == "bare") return DirectEncodingMode::Bare;
  if (s == "augmented") return DirectEncodingMode::Augmented;
  throw UsageError("unknown direct-encoding mode '" + s + "'");
}

// One side of verify-equiv.
struct Artifact {
  std::optional<ClauseSet> formula;
  std::optional<Circuit> circuit;
  bool is_checker() const { return formula && formula->output(); }
  bool is_propagator() const { return formula && !formula->output(); }
};

Artifact load_artifact(const std::string& path) {
  std::string text = slurp(path);
  Artifact a;
  if (looks_like_gate_list(text)) a.circuit = read_gate_list_string(text);
  else a.formula = read_dimacs_string(text);
  return a;
}

// Observation of an artifact at one propositional picture of a domain state.
std::string observe(const Artifact& a, const DirectEncodingMap& map, const DomainState& s,
                    Representation rep, bool augmented) {
  if (a.circuit) return evaluate(*a.circuit, build_circuit_input(s, map)) ? "1" : "0";
  ClauseSet f = augmented ? with_direct_encoding(*a.formula, map) : *a.formula;
  PropagationResult r = unit_propagate(f, encode(s, map, rep));
  if (a.is_checker()) return r.final[*f.output()] == Value::False ? "0" : "1";
  DomainState d = decode_assignment(r.final, map);
  if (r.conflict || d.is_wipeout()) return "wipeout";
  return "[" + d.to_string() + "]";
}

int run_verify_equiv(const std::string& path_a, const std::string& path_b, const std::string& domains,
                     const std::string& mode, std::size_t budget) {
  Artifact a = load_artifact(path_a), b = load_artifact(path_b);
  std::optional<DirectEncodingMap> map;
  if (a.formula) map = DirectEncodingMap::from_formula(*a.formula);
  else if (b.formula) map = DirectEncodingMap::from_formula(*b.formula);
  else if (!domains.empty()) map = DirectEncodingMap(parse_domains(domains));
  else throw UsageError("two circuits need --domains to define the domain states");
  if (a.formula && b.formula && !(DirectEncodingMap::from_formula(*b.formula).domain_sizes() == map->domain_sizes()))
    throw UsageError("artifacts encode different domains");

  // Propagators compare by pruning when both sides are propagators, by the
  // induced checker (wipeout or not) otherwise.
  const bool both_propagators = a.is_propagator() && b.is_propagator();
  const bool augmented = parse_mode(mode) == DirectEncodingMode::Augmented;
  auto view = [both_propagators](const Artifact& x, std::string obs) {
    if (both_propagators || !x.is_propagator()) return obs;
    return std::string(obs == "wipeout" ? "0" : "1");
  };

  std::size_t states = 0;
  std::vector<std::string> diffs;
  for (const DomainState& s : enumerate_domain_states(map->variables(), budget)) {
    ++states;
    for (Representation rep : {Representation::Singletons, Representation::FalseOnly}) {
      std::string oa = view(a, observe(a, *map, s, rep, augmented));
      std::string ob = view(b, observe(b, *map, s, rep, augmented));
      if (oa != ob)
        diffs.push_back("difference [" + s.to_string() + "] " + to_string(rep) + " a: " + oa + " b: " + ob);
    }
  }
  std::cout << "equivalent " << (diffs.empty() ? "yes" : "no") << '\n' << "states " << states << '\n';
  for (const auto& d : diffs) std::cout << d << '\n';
  return diffs.empty() ? 0 : kExitFail;
}

int run_validate(const std::string& path, const std::string& oracle_spec, const std::string& mode,
                 std::size_t budget) {
  ClauseSet f = load_cnf(path);
  Oracle oracle = parse_oracle(oracle_spec);
  DirectEncodingMap map = DirectEncodingMap::from_formula(f);
  if (map.domain_sizes() != oracle.domain_sizes) throw UsageError("oracle domains do not match the formula's encoding");
  ValidateOptions opt{parse_mode(mode), budget};
  ValidationReport report;
  if (f.output()) {
    std::cout << "kind checker\n";
    report = validate_checker_decomposition(CheckerDecomposition(f, map), oracle.checker, opt);
  } else {
    std::cout << "kind propagator\n";
    report = validate_propagator_decomposition(PropagatorDecomposition(f, map),
                                               lift_checker_to_propagator(oracle.checker), opt);
  }
  std::cout << report.to_text();
  return report.passed() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CNF decompositions of propagators and consistency checkers"};
  app.require_subcommand(1, 1);

  std::string input, output, second, oracle_spec, mode = "auto", strip = "remove", domains, fixture;
  std::size_t budget = kDefaultStateBudgetLog2;
  bool amo = false, alo = false, list = false;

  auto add_out = [&](CLI::App* c) { c->add_option("-o,--output", output, "Output file (default stdout)"); };
  auto add_budget = [&](CLI::App* c) {
    c->add_option("--budget", budget, "Enumeration budget as log2 of the state count")->capture_default_str();
  };

  auto* encode_table = app.add_subcommand("encode-table", "Support encoding of a constraint table");
  encode_table->add_option("table", input, "Table file")->required();
  encode_table->add_flag("--amo", amo, "Append the at-most-one clauses");
  encode_table->add_flag("--alo", alo, "Append the at-least-one clauses");
  add_out(encode_table);

  auto* p2c = app.add_subcommand("prop-to-checker", "Propagator decomposition to checker decomposition");
  p2c->add_option("cnf", input)->required();
  add_out(p2c);

  auto* c2p = app.add_subcommand("checker-to-prop", "Checker decomposition to propagator decomposition");
  c2p->add_option("cnf", input)->required();
  add_out(c2p);

  auto* normalize = app.add_subcommand("normalize", "Strip negative inputs, fix auxiliary polarity, exactly-one-negative form");
  normalize->add_option("cnf", input)->required();
  normalize->add_option("--strip", strip, "remove|substitute")->capture_default_str();
  add_budget(normalize);
  add_out(normalize);

  auto* to_circuit = app.add_subcommand("to-circuit", "Exactly-one-negative checker to monotone circuit");
  to_circuit->add_option("cnf", input)->required();
  add_out(to_circuit);

  auto* to_cnf = app.add_subcommand("to-cnf", "Monotone circuit to checker decomposition (Tseitin)");
  to_cnf->add_option("circuit", input)->required();
  to_cnf->add_option("--domains", domains, "Comma-separated domain sizes (default: one variable)");
  add_out(to_cnf);

  auto* validate = app.add_subcommand("validate", "Exhaustively validate a decomposition against an oracle");
  validate->add_option("cnf", input)->required();
  validate->add_option("--oracle", oracle_spec, "table:<file> or alldiff:<n>:<d>")->required();
  validate->add_option("--direct-encoding", mode, "auto|bare|augmented")->capture_default_str();
  add_budget(validate);

  auto* equiv = app.add_subcommand("verify-equiv", "Compare two artifacts at every domain state");
  equiv->add_option("a", input)->required();
  equiv->add_option("b", second)->required();
  equiv->add_option("--domains", domains, "Domain sizes when both artifacts are circuits");
  equiv->add_option("--direct-encoding", mode, "bare|augmented for propagator sides")->capture_default_str();
  add_budget(equiv);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Print a worked-example artifact");
  fixtures_cmd->add_option("name", fixture, "Fixture name");
  fixtures_cmd->add_flag("--list", list, "List fixture names");
  add_out(fixtures_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (encode_table->parsed()) {
      ExtensionalConstraint c = read_table_string(slurp(input));
      emit(output, to_dimacs(bacchus_table_encoding(c, {amo, alo}).formula()));
    } else if (p2c->parsed()) {
      emit(output, to_dimacs(propagator_to_checker(PropagatorDecomposition(load_cnf(input))).formula()));
    } else if (c2p->parsed()) {
      emit(output, to_dimacs(checker_to_propagator(CheckerDecomposition(load_cnf(input))).formula()));
    } else if (normalize->parsed()) {
      StripMode sm;
      if (strip == "remove") sm = StripMode::Remove;
      else if (strip == "substitute") sm = StripMode::Substitute;
      else throw UsageError("unknown strip mode '" + strip + "'");
      emit(output, to_dimacs(normalize_checker(CheckerDecomposition(load_cnf(input)), sm, budget).formula()));
    } else if (to_circuit->parsed()) {
      emit(output, to_gate_list(checker_to_circuit(CheckerDecomposition(load_cnf(input)))));
    } else if (to_cnf->parsed()) {
      Circuit s = read_gate_list_string(slurp(input));
      std::vector<int> sizes = domains.empty() ? std::vector<int>{static_cast<int>(s.num_inputs())}
                                               : parse_domains(domains);
      emit(output, to_dimacs(circuit_to_checker(s, DirectEncodingMap(sizes)).formula()));
    } else if (validate->parsed()) {
      return run_validate(input, oracle_spec, mode, budget);
    } else if (equiv->parsed()) {
      return run_verify_equiv(input, second, domains, mode, budget);
    } else if (fixtures_cmd->parsed()) {
      if (list) {
        for (const auto& n : fixtures::names()) std::cout << n << '\n';
        return 0;
      }
      auto text = fixtures::text(fixture);
      if (!text) throw UsageError("unknown fixture '" + fixture + "'");
      emit(output, *text);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cnfdecomp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
