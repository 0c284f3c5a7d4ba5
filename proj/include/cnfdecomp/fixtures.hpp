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

// The worked examples from the decomposition literature this library
// reproduces, written out by hand rather than generated.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cnfdecomp/circuit.hpp"
#include "cnfdecomp/cnf.hpp"
#include "cnfdecomp/csp_model.hpp"
#include "cnfdecomp/decomposition.hpp"
#include "cnfdecomp/dimacs.hpp"
#include "cnfdecomp/gate_list.hpp"
#include "cnfdecomp/table_io.hpp"

namespace cnfdecomp::fixtures {

// Table over X1, X2 with domains {a, b} (a = 0, b = 1) and solutions
// <a,a>, <b,b>, <a,b>.
inline ExtensionalConstraint example1_table() {
  return ExtensionalConstraint(make_variables({2, 2}), {{0, 0}, {1, 1}, {0, 1}});
}

// Variable numbering shared by examples 1 and 2 (0-based).
namespace ex12 {
inline constexpr Var x1a = 0, x1b = 1, x2a = 2, x2b = 3, y1 = 4, y2 = 5, y3 = 6, z = 7;
}

namespace detail {
inline void add_table_inputs(ClauseSet& f) {
  f.add_variable(Role::Input, CspLiteral{0, 0});
  f.add_variable(Role::Input, CspLiteral{0, 1});
  f.add_variable(Role::Input, CspLiteral{1, 0});
  f.add_variable(Role::Input, CspLiteral{1, 1});
}
}  // namespace detail

// The eleven clauses of the extended support encoding, row by row.
inline PropagatorDecomposition example1_propagator() {
  using namespace ex12;
  ClauseSet f;
  detail::add_table_inputs(f);
  for (int i = 0; i < 3; ++i) f.add_variable(Role::Auxiliary);
  auto P = Lit::pos;
  auto N = Lit::neg;
  f.add_clause({N(x1a), P(y1), P(y3)});
  f.add_clause({N(x2a), P(y1)});
  f.add_clause({N(y1), P(x1a)});
  f.add_clause({N(y1), P(x2a)});
  f.add_clause({N(x1b), P(y2)});
  f.add_clause({N(x2b), P(y2), P(y3)});
  f.add_clause({N(y2), P(x1b)});
  f.add_clause({N(y2), P(x2b)});
  f.add_clause({N(y3), P(x1a)});
  f.add_clause({N(y3), P(x2b)});
  f.add_clause({P(y1), P(y2), P(y3)});
  return PropagatorDecomposition(std::move(f));
}

// Tuple implications plus (y1 y2 y3 -z).
inline CheckerDecomposition example2_checker() {
  using namespace ex12;
  ClauseSet f;
  detail::add_table_inputs(f);
  for (int i = 0; i < 3; ++i) f.add_variable(Role::Auxiliary);
  f.add_variable(Role::Output);
  auto P = Lit::pos;
  auto N = Lit::neg;
  f.add_clause({N(y1), P(x1a)});
  f.add_clause({N(y1), P(x2a)});
  f.add_clause({N(y2), P(x1b)});
  f.add_clause({N(y2), P(x2b)});
  f.add_clause({N(y3), P(x1a)});
  f.add_clause({N(y3), P(x2b)});
  f.add_clause({P(y1), P(y2), P(y3), N(z)});
  return CheckerDecomposition(std::move(f));
}

// OR1(x1, x2), OR2(x1, NOT x2), AND3(OR1, OR2). Computes x1 although it
// contains a negation.
inline Circuit example3_circuit() {
  return read_gate_list_string(
      "input 1\n"
      "input 2\n"
      "gate 3 OR 1 2\n"
      "gate 4 NOT 2\n"
      "gate 5 OR 1 4\n"
      "gate 6 AND 3 5\n"
      "output 6\n");
}

// Variables x1 = 0, x2 = 1, g1 = 2, g2 = 3, g3 = 4.
inline std::vector<Clause> example3_tseitin_clauses() {
  auto P = Lit::pos;
  auto N = Lit::neg;
  return {{N(0), P(2)}, {N(1), P(2)}, {N(2), P(0), P(1)},
          {N(0), P(3)}, {P(1), P(3)}, {N(3), P(0), N(1)},
          {N(4), P(2)}, {N(4), P(3)}, {N(2), N(3), P(4)}};
}

// c1 = (x1 x2 -y1), c2 = (x5 x6 -y2), c3 = (x4 y1 -y2), c4 = (x3 y2 -y1),
// c5 = (y1 y2 x7 -z). x1..x7 are the values 0..6 of a single CSP variable.
inline CheckerDecomposition example4_checker() {
  ClauseSet f;
  for (int k = 0; k < 7; ++k) f.add_variable(Role::Input, CspLiteral{0, k});
  const Var y1 = f.add_variable(Role::Auxiliary);
  const Var y2 = f.add_variable(Role::Auxiliary);
  const Var z = f.add_variable(Role::Output);
  auto x = [](int k) { return Lit::pos(static_cast<Var>(k - 1)); };
  f.add_clause({x(1), x(2), Lit::neg(y1)});
  f.add_clause({x(5), x(6), Lit::neg(y2)});
  f.add_clause({x(4), Lit::pos(y1), Lit::neg(y2)});
  f.add_clause({x(3), Lit::pos(y2), Lit::neg(y1)});
  f.add_clause({Lit::pos(y1), Lit::pos(y2), x(7), Lit::neg(z)});
  return CheckerDecomposition(std::move(f));
}

// The three-layer monotone circuit for example 4: gates 11-12 form layer 1,
// 13-18 layer 2 (17 and 18 are the variable gates for y1 and y2), 19 layer 3.
inline Circuit example4_circuit() {
  return read_gate_list_string(
      "input 1\ninput 2\ninput 3\ninput 4\ninput 5\ninput 6\ninput 7\n"
      "gate 11 OR 1 2\n"
      "gate 12 OR 5 6\n"
      "gate 13 OR 1 2\n"
      "gate 14 OR 5 6\n"
      "gate 15 OR 4 11\n"
      "gate 16 OR 3 12\n"
      "gate 17 AND 13 16\n"
      "gate 18 AND 14 15\n"
      "gate 19 OR 17 18 7\n"
      "output 19\n");
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"example1",  "example1-table", "example2",
                                             "example3",  "example4",       "example4-circuit"};
  return n;
}

inline std::optional<std::string> text(const std::string& name) {
  std::ostringstream os;
  if (name == "example1") write_dimacs(os, example1_propagator().formula());
  else if (name == "example1-table") write_table(os, example1_table());
  else if (name == "example2") write_dimacs(os, example2_checker().formula());
  else if (name == "example3") write_gate_list(os, example3_circuit());
  else if (name == "example4") write_dimacs(os, example4_checker().formula());
  else if (name == "example4-circuit") write_gate_list(os, example4_circuit());
  else return std::nullopt;
  return os.str();
}

}  // namespace cnfdecomp::fixtures
