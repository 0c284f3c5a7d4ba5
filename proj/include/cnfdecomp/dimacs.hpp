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

// Extended DIMACS: the standard `p cnf V C` header and zero-terminated clause
// lines, plus role annotations
//   c role input <var> [<csp-var> <value>]
//   c role aux <var>
//   c role output <var>
// Variables without an annotation are auxiliaries.

#pragma once

#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnfdecomp/cnf.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

namespace detail {

inline long parse_long(const std::string& tok, std::size_t line) {
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0') throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

}  // namespace detail

inline ClauseSet read_dimacs(std::istream& in) {
  std::map<long, VarInfo> roles;
  std::optional<long> num_vars, num_clauses;
  std::vector<std::pair<Clause, std::size_t>> clauses;
  Clause current;
  std::size_t current_line = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") {
      std::string kw;
      if (!(ls >> kw) || kw != "role") continue;
      std::string kind, var_tok;
      if (!(ls >> kind >> var_tok)) throw ParseError(lineno, "incomplete role annotation");
      long var = detail::parse_long(var_tok, lineno);
      if (var < 1) throw ParseError(lineno, "variable numbers start at 1");
      VarInfo info;
      if (kind == "input") {
        info.role = Role::Input;
        std::string a, b;
        if (ls >> a) {
          if (!(ls >> b)) throw ParseError(lineno, "input annotation needs both CSP variable and value");
          info.literal = CspLiteral{static_cast<int>(detail::parse_long(a, lineno)),
                                    static_cast<int>(detail::parse_long(b, lineno))};
        }
      } else if (kind == "aux") {
        info.role = Role::Auxiliary;
      } else if (kind == "output") {
        info.role = Role::Output;
      } else {
        throw ParseError(lineno, "unknown role '" + kind + "'");
      }
      if (!roles.emplace(var, info).second) throw ParseError(lineno, "variable annotated twice");
      continue;
    }
    if (tok[0] == 'c') continue;
    if (tok == "p") {
      std::string fmt, v, c;
      if (num_vars) throw ParseError(lineno, "second problem line");
      if (!(ls >> fmt >> v >> c) || fmt != "cnf") throw ParseError(lineno, "expected 'p cnf V C'");
      num_vars = detail::parse_long(v, lineno);
      num_clauses = detail::parse_long(c, lineno);
      if (*num_vars < 0 || *num_clauses < 0) throw ParseError(lineno, "negative counts");
      continue;
    }
    if (!num_vars) throw ParseError(lineno, "clause before the problem line");
    do {
      long lit = detail::parse_long(tok, lineno);
      if (lit == 0) {
        clauses.emplace_back(std::move(current), current_line);
        current.clear();
        continue;
      }
      if (current.empty()) current_line = lineno;
      long var = lit < 0 ? -lit : lit;
      if (var > *num_vars) throw ParseError(lineno, "literal " + tok + " exceeds the declared variable count");
      current.push_back(Lit{static_cast<Var>(var - 1), lit < 0});
    } while (ls >> tok);
  }
  if (!num_vars) throw ParseError(lineno, "missing problem line");
  if (!current.empty()) throw ParseError(lineno, "last clause is not terminated by 0");
  if (static_cast<long>(clauses.size()) != *num_clauses)
    throw ParseError(lineno, "problem line declares " + std::to_string(*num_clauses) + " clauses, found " +
                                 std::to_string(clauses.size()));

  ClauseSet f;
  for (long v = 1; v <= *num_vars; ++v) {
    auto it = roles.find(v);
    try {
      if (it == roles.end()) f.add_variable(Role::Auxiliary);
      else f.add_variable(it->second.role, it->second.literal);
    } catch (const Error& e) {
      throw ParseError(0, "variable " + std::to_string(v) + ": " + e.what());
    }
  }
  for (const auto& [v, _] : roles)
    if (v > *num_vars) throw ParseError(0, "role annotation for undeclared variable " + std::to_string(v));
  for (auto& [c, at] : clauses) {
    try {
      f.add_clause(std::move(c));
    } catch (const Error& e) {
      throw ParseError(at, e.what());
    }
  }
  return f;
}

inline ClauseSet read_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const ClauseSet& f) {
  for (Var v = 0; v < f.num_vars(); ++v) {
    const VarInfo& info = f.info(v);
    out << "c role ";
    switch (info.role) {
      case Role::Input:
        out << "input " << v + 1;
        if (info.literal) out << ' ' << info.literal->variable << ' ' << info.literal->value;
        break;
      case Role::Auxiliary: out << "aux " << v + 1; break;
      case Role::Output: out << "output " << v + 1; break;
    }
    out << '\n';
  }
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Lit l : c) out << to_string(l) << ' ';
    out << "0\n";
  }
}

inline std::string to_dimacs(const ClauseSet& f) {
  std::ostringstream os;
  write_dimacs(os, f);
  return os.str();
}

}  // namespace cnfdecomp
