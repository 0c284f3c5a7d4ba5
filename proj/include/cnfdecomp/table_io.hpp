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

// Constraint-table text format:
//   table <arity> <d_1> ... <d_k>
//   <v_1> ... <v_k>        one solution tuple per line
// '#' starts a comment.

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnfdecomp/csp_model.hpp"
#include "cnfdecomp/dimacs.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

inline ExtensionalConstraint read_table(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<int> sizes;
  bool header = false;
  std::vector<ExtensionalConstraint::Tuple> tuples;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (!header) {
      if (toks[0] != "table" || toks.size() < 2) throw ParseError(lineno, "expected 'table <arity> <d_1> ...'");
      long arity = detail::parse_long(toks[1], lineno);
      if (arity < 0 || static_cast<std::size_t>(arity) + 2 != toks.size())
        throw ParseError(lineno, "header lists " + std::to_string(toks.size() - 2) + " domain sizes for arity " + toks[1]);
      for (std::size_t i = 2; i < toks.size(); ++i) {
        long d = detail::parse_long(toks[i], lineno);
        if (d < 1 || d > kMaxDomainSize) throw ParseError(lineno, "domain size out of range");
        sizes.push_back(static_cast<int>(d));
      }
      header = true;
      continue;
    }
    if (toks.size() != sizes.size()) throw ParseError(lineno, "tuple arity differs from header");
    ExtensionalConstraint::Tuple t;
    for (std::size_t p = 0; p < toks.size(); ++p) {
      long v = detail::parse_long(toks[p], lineno);
      if (v < 0 || v >= sizes[p]) throw ParseError(lineno, "value " + toks[p] + " outside the domain");
      t.push_back(static_cast<int>(v));
    }
    tuples.push_back(std::move(t));
  }
  if (!header) throw ParseError(lineno, "missing table header");
  try {
    return ExtensionalConstraint(make_variables(sizes), std::move(tuples));
  } catch (const PreconditionError& e) {
    throw ParseError(lineno, e.what());
  }
}

inline ExtensionalConstraint read_table_string(const std::string& text) {
  std::istringstream in(text);
  return read_table(in);
}

inline void write_table(std::ostream& out, const ExtensionalConstraint& c) {
  out << "table " << c.arity();
  for (int d : c.domain_sizes()) out << ' ' << d;
  out << '\n';
  for (const auto& t : c.tuples()) {
    for (std::size_t p = 0; p < t.size(); ++p) out << (p ? " " : "") << t[p];
    out << '\n';
  }
}

}  // namespace cnfdecomp
