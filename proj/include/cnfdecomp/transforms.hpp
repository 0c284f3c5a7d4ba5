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

// Constructive transformations between propagator decompositions, checker
// decompositions and monotone circuits.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cnfdecomp/circuit.hpp"
#include "cnfdecomp/cnf.hpp"
#include "cnfdecomp/csp_model.hpp"
#include "cnfdecomp/decomposition.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

// ---------------------------------------------------------------------------
// Propagator -> checker
// ---------------------------------------------------------------------------

// p_t and p_f record that p was forced TRUE or FALSE.
struct ReifiedVariablePair {
  Var base = 0;
  Var t = 0;
  Var f = 0;
};

struct PropagatorToChecker {
  CheckerDecomposition checker;
  std::vector<ReifiedVariablePair> pairs;
  std::size_t split_formula_clauses = 0;  // |C_P| after 3-CNF splitting
};

// Simulates unit propagation of C_P (split to 3-CNF) on reified variables:
// channels (-p p_t) (p p_f) for every variable, then for every clause and every
// literal l, taken from the last to the first, (-false(l') ... true(l)) over the
// other literals l', then (-p_t -p_f -z) for every variable. Variables: those
// of the split C_P, then p_t p_f per variable, then z.
inline PropagatorToChecker propagator_to_checker_detailed(const PropagatorDecomposition& d) {
  const ClauseSet p3 = convert_3cnf(d.formula());
  const std::size_t n = p3.num_vars();
  ClauseSet out;
  for (Var v = 0; v < n; ++v) {
    const VarInfo& vi = p3.info(v);
    out.add_variable(vi.role == Role::Input ? Role::Input : Role::Auxiliary, vi.literal);
  }
  std::vector<ReifiedVariablePair> pairs;
  for (Var v = 0; v < n; ++v) {
    Var t = out.add_variable(Role::Auxiliary);
    Var f = out.add_variable(Role::Auxiliary);
    pairs.push_back({v, t, f});
  }
  const Var z = out.add_variable(Role::Output);

  auto true_of = [&pairs](Lit l) { return l.negative ? pairs[l.var].f : pairs[l.var].t; };
  auto false_of = [&pairs](Lit l) { return l.negative ? pairs[l.var].t : pairs[l.var].f; };

  for (const auto& p : pairs) {
    out.add_clause({Lit::neg(p.base), Lit::pos(p.t)});
    out.add_clause({Lit::pos(p.base), Lit::pos(p.f)});
  }
  for (const Clause& c : p3.clauses()) {
    for (std::size_t k = c.size(); k-- > 0;) {
      Clause sim;
      for (std::size_t o = 0; o < c.size(); ++o)
        if (o != k) sim.push_back(Lit::neg(false_of(c[o])));
      sim.push_back(Lit::pos(true_of(c[k])));
      out.add_clause(std::move(sim));
    }
  }
  for (const auto& p : pairs) out.add_clause({Lit::neg(p.t), Lit::neg(p.f), Lit::neg(z)});

  return {CheckerDecomposition(std::move(out), d.encoding()), std::move(pairs), p3.num_clauses()};
}

inline CheckerDecomposition propagator_to_checker(const PropagatorDecomposition& d) {
  return propagator_to_checker_detailed(d).checker;
}

// ---------------------------------------------------------------------------
// Checker -> propagator
// ---------------------------------------------------------------------------

// One copy of C_C per input x_{i,j}, in (i, j) order, with the siblings
// x_{i,k} (k != j) fixed FALSE by simplification, followed by the bridge
// (z' -x_{i,j}). Inputs are shared and numbered first; each copy renames the
// non-input variables (z included) to fresh auxiliaries. A clause emptied by
// the fixing becomes (-z') so the probe fails as it would under propagation.
inline PropagatorDecomposition checker_to_propagator(const CheckerDecomposition& d) {
  const ClauseSet& cc = d.formula();
  const DirectEncodingMap& map = d.encoding();
  const auto xs = map.propositional_vars();

  ClauseSet out;
  std::map<Var, Var> input_id;
  for (Var x : xs) input_id[x] = out.add_variable(Role::Input, map.literal(x));

  std::vector<Var> others;
  for (Var v = 0; v < cc.num_vars(); ++v)
    if (cc.role(v) != Role::Input) others.push_back(v);

  for (Var probe : xs) {
    const CspLiteral pl = *map.literal(probe);
    std::map<Var, Var> rename;
    for (Var v : others) rename[v] = out.add_variable(Role::Auxiliary);
    const Var z_copy = rename.at(d.output());

    for (const Clause& c : cc.clauses()) {
      Clause copy;
      bool satisfied = false;
      for (Lit l : c) {
        if (cc.role(l.var) == Role::Input) {
          const CspLiteral cl = *map.literal(l.var);
          if (cl.variable == pl.variable && cl.value != pl.value) {
            if (l.negative) satisfied = true;
            continue;
          }
          copy.push_back(Lit{input_id.at(l.var), l.negative});
        } else {
          copy.push_back(Lit{rename.at(l.var), l.negative});
        }
      }
      if (satisfied) continue;
      if (copy.empty()) copy.push_back(Lit::neg(z_copy));
      out.add_clause(std::move(copy));
    }
    out.add_clause({Lit::pos(z_copy), Lit::neg(input_id.at(probe))});
  }
  return PropagatorDecomposition(std::move(out), DirectEncodingMap(map.domain_sizes()));
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

enum class StripMode { Remove, Substitute };

inline CheckerDecomposition rebuild(const ClauseSet& like, std::vector<Clause> clauses,
                                    const DirectEncodingMap& map) {
  ClauseSet out;
  for (Var v = 0; v < like.num_vars(); ++v) out.add_variable(like.info(v).role, like.info(v).literal);
  for (auto& c : clauses) out.add_clause(std::move(c));
  return CheckerDecomposition(std::move(out), map);
}

// Remove: drop every clause holding a negative input literal. Substitute:
// rewrite -x_{i,j} as the disjunction of its siblings x_{i,k}, k != j.
inline CheckerDecomposition strip_negative_input_literals(const CheckerDecomposition& d, StripMode mode) {
  const ClauseSet& f = d.formula();
  const DirectEncodingMap& map = d.encoding();
  std::vector<Clause> kept;
  for (const Clause& c : f.clauses()) {
    const bool has_negative_input = std::any_of(c.begin(), c.end(), [&](Lit l) {
      return l.negative && f.role(l.var) == Role::Input;
    });
    if (!has_negative_input) {
      kept.push_back(c);
      continue;
    }
    if (mode == StripMode::Remove) continue;
    Clause out;
    auto push = [&out](Lit l) {
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    };
    for (Lit l : c) {
      if (!(l.negative && f.role(l.var) == Role::Input)) {
        push(l);
        continue;
      }
      const CspLiteral cl = *map.literal(l.var);
      for (int k = 0; k < map.domain_size(cl.variable); ++k)
        if (k != cl.value) push(Lit::pos(map.var(cl.variable, k)));
    }
    if (out.empty()) throw Refusal("substitution emptied clause " + to_string(c));
    kept.push_back(std::move(out));
  }
  return rebuild(f, std::move(kept), map);
}

struct PolarityNormalization {
  CheckerDecomposition checker;
  std::vector<Var> flipped;
};

// Flips every auxiliary that propagation forces TRUE at some domain state
// (either representation) where z ends FALSE. Throws NormalizationFailure when
// an auxiliary is forced TRUE at one such state and FALSE at another.
inline PolarityNormalization normalize_auxiliary_polarity_detailed(
    const CheckerDecomposition& d, std::size_t budget_log2 = kDefaultStateBudgetLog2) {
  const ClauseSet& f = d.formula();
  const UnitPropagator up(f);
  const Var z = d.output();
  const auto aux = f.auxiliaries();
  std::set<Var> forced_true, forced_false;
  for (const DomainState& s : enumerate_domain_states(d.encoding().variables(), budget_log2))
    for (Representation r : {Representation::Singletons, Representation::FalseOnly}) {
      PropagationResult res = up.propagate(encode(s, d.encoding(), r));
      if (res.conflict || res.final[z] != Value::False) continue;
      for (Var y : aux) {
        if (res.final[y] == Value::True) forced_true.insert(y);
        if (res.final[y] == Value::False) forced_false.insert(y);
      }
    }
  std::vector<Var> flipped(forced_true.begin(), forced_true.end());
  for (Var y : flipped)
    if (forced_false.count(y))
      throw NormalizationFailure("auxiliary " + std::to_string(y + 1) +
                                 " is forced both TRUE and FALSE at z-FALSE states");
  std::vector<Clause> clauses = f.clauses();
  for (Clause& c : clauses)
    for (Lit& l : c)
      if (forced_true.count(l.var)) l = ~l;
  return {rebuild(f, std::move(clauses), d.encoding()), std::move(flipped)};
}

inline CheckerDecomposition normalize_auxiliary_polarity(const CheckerDecomposition& d,
                                                         std::size_t budget_log2 = kDefaultStateBudgetLog2) {
  return normalize_auxiliary_polarity_detailed(d, budget_log2).checker;
}

// Keeps clauses with exactly one negative literal, drops those with two or
// more (they can never become unit), and fails on a clause with none. An
// all-positive clause holding z is dropped as well: it can only ever force z
// TRUE, which no checker relies on.
inline CheckerDecomposition to_exactly_one_negative_form(const CheckerDecomposition& d) {
  const ClauseSet& f = d.formula();
  std::vector<Clause> kept;
  for (const Clause& c : f.clauses()) {
    std::size_t negatives = 0;
    bool has_z = false;
    for (Lit l : c) {
      has_z |= l.var == d.output();
      if (!l.negative) continue;
      if (f.role(l.var) == Role::Input)
        throw PreconditionError("clause " + to_string(c) + " still has a negative input literal");
      ++negatives;
    }
    if (negatives >= 2 || (negatives == 0 && has_z)) continue;
    if (negatives == 0)
      throw NormalizationFailure("clause " + to_string(c) +
                                 " has no negative literal; it would force an auxiliary TRUE");
    kept.push_back(c);
  }
  return rebuild(f, std::move(kept), d.encoding());
}

inline CheckerDecomposition normalize_checker(const CheckerDecomposition& d, StripMode mode,
                                              std::size_t budget_log2 = kDefaultStateBudgetLog2) {
  return to_exactly_one_negative_form(
      normalize_auxiliary_polarity(strip_negative_input_literals(d, mode), budget_log2));
}

inline bool is_exactly_one_negative_form(const ClauseSet& f) {
  for (const Clause& c : f.clauses()) {
    std::size_t negatives = 0;
    for (Lit l : c) {
      if (!l.negative) continue;
      if (f.role(l.var) == Role::Input) return false;
      ++negatives;
    }
    if (negatives != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Checker -> monotone circuit
// ---------------------------------------------------------------------------

// Layered construction before any sweep. Layer i (1-based) holds a clause gate
// per clause and a variable gate per non-input variable; absent entries were
// omitted.
struct LayeredCircuitPlan {
  std::size_t layers = 0;
  std::vector<Var> gate_vars;  // non-input variables, ascending; z included
  std::vector<std::vector<std::optional<std::size_t>>> clause_gates;    // [layer-1][clause]
  std::vector<std::vector<std::optional<std::size_t>>> variable_gates;  // [layer-1][slot]
  std::vector<std::string> omissions;
  Circuit circuit;  // unswept; inputs are the formula's inputs, ascending
};

enum class GateOrigin : std::uint8_t { Input, Clause, Variable, Constant };

struct GateInfo {
  GateOrigin origin = GateOrigin::Input;
  std::size_t layer = 0;
  std::size_t index = 0;  // clause index or variable slot
};

struct LayeredCircuit {
  Circuit circuit;
  std::vector<GateInfo> info;  // per node of circuit
  LayeredCircuitPlan plan;
};

// Layer count is the number of non-input variables, z included.
inline LayeredCircuitPlan plan_layered_circuit(const CheckerDecomposition& d) {
  const ClauseSet& f = d.formula();
  if (!is_exactly_one_negative_form(f))
    throw Refusal("checker is not in exactly-one-negative form; normalize it first");

  LayeredCircuitPlan plan;
  std::map<Var, std::size_t> slot;
  std::map<Var, std::size_t> input_node;
  for (Var v = 0; v < f.num_vars(); ++v) {
    if (f.role(v) == Role::Input) {
      input_node[v] = plan.circuit.add_input(static_cast<int>(v) + 1);
    } else {
      slot[v] = plan.gate_vars.size();
      plan.gate_vars.push_back(v);
    }
  }
  // gate ids continue after the variable numbers
  int next_id = static_cast<int>(f.num_vars()) + 1;

  auto var_label = [&f](Var v) {
    return std::string(f.role(v) == Role::Output ? "z" : "y") + std::to_string(v + 1);
  };

  plan.layers = plan.gate_vars.size();
  std::vector<std::optional<std::size_t>> prev(plan.gate_vars.size());
  for (std::size_t layer = 1; layer <= plan.layers; ++layer) {
    std::vector<std::optional<std::size_t>> cg(f.num_clauses());
    std::vector<std::vector<std::size_t>> var_inputs(plan.gate_vars.size());
    for (std::size_t j = 0; j < f.num_clauses(); ++j) {
      const Clause& c = f.clause(j);
      std::vector<std::size_t> fanin;
      std::optional<Var> head;
      bool defined = true;
      for (Lit l : c) {
        if (l.negative) {
          head = l.var;
          continue;
        }
        if (f.role(l.var) == Role::Input) {
          fanin.push_back(input_node.at(l.var));
        } else if (auto g = prev[slot.at(l.var)]) {
          fanin.push_back(*g);
        } else {
          defined = false;
          plan.omissions.push_back("layer " + std::to_string(layer) + ": clause " +
                                   std::to_string(j + 1) + " omitted, " + var_label(l.var) +
                                   " undefined");
          break;
        }
      }
      if (!defined) continue;
      cg[j] = plan.circuit.add_gate(next_id++, GateKind::Or, std::move(fanin));
      var_inputs[slot.at(*head)].push_back(*cg[j]);
    }
    std::vector<std::optional<std::size_t>> vg(plan.gate_vars.size());
    for (std::size_t k = 0; k < plan.gate_vars.size(); ++k) {
      if (var_inputs[k].empty()) {
        plan.omissions.push_back("layer " + std::to_string(layer) + ": variable gate " +
                                 var_label(plan.gate_vars[k]) + " omitted, no defined inputs");
        continue;
      }
      vg[k] = plan.circuit.add_gate(next_id++, GateKind::And, std::move(var_inputs[k]));
    }
    plan.clause_gates.push_back(std::move(cg));
    plan.variable_gates.push_back(vg);
    prev = std::move(vg);
  }

  const std::size_t zslot = slot.at(d.output());
  if (auto g = prev[zslot]) {
    plan.circuit.set_output(*g);
  } else {
    plan.omissions.push_back("output never defined; constant 1");
    plan.circuit.set_output(plan.circuit.add_gate(next_id++, GateKind::And, {}));
  }
  return plan;
}

// Collapses single-input variable gates into their input, removes gates that
// do not reach the output and renumbers gates after the inputs.
inline LayeredCircuit sweep_layered_plan(LayeredCircuitPlan plan) {
  const Circuit& full = plan.circuit;
  const std::size_t n = full.nodes().size();

  std::vector<GateInfo> origin(n);
  for (std::size_t layer = 0; layer < plan.layers; ++layer) {
    for (std::size_t j = 0; j < plan.clause_gates[layer].size(); ++j)
      if (auto g = plan.clause_gates[layer][j]) origin[*g] = {GateOrigin::Clause, layer + 1, j};
    for (std::size_t k = 0; k < plan.variable_gates[layer].size(); ++k)
      if (auto g = plan.variable_gates[layer][k]) origin[*g] = {GateOrigin::Variable, layer + 1, k};
  }

  std::vector<std::size_t> alias(n);
  for (std::size_t i = 0; i < n; ++i) {
    alias[i] = i;
    const CircuitNode& node = full.node(i);
    if (node.kind == GateKind::Input) continue;
    if (origin[i].origin != GateOrigin::Variable && origin[i].origin != GateOrigin::Clause)
      origin[i] = {GateOrigin::Constant, plan.layers, 0};
    if (origin[i].origin == GateOrigin::Variable && node.fanin.size() == 1) alias[i] = alias[node.fanin[0]];
  }

  std::vector<char> live(n, 0);
  const std::size_t out = alias[full.output()];
  live[out] = 1;
  for (std::size_t i = n; i-- > 0;) {
    if (!live[i]) continue;
    for (std::size_t f : full.node(i).fanin) live[alias[f]] = 1;
  }

  LayeredCircuit result;
  std::vector<std::size_t> renum(n);
  int next_id = 0;
  for (std::size_t idx : full.inputs()) {
    renum[idx] = result.circuit.add_input(full.node(idx).id);
    result.info.push_back({GateOrigin::Input, 0, 0});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (full.node(i).kind != GateKind::Input) {
      next_id = full.node(i).id;
      break;
    }
  for (std::size_t i = 0; i < n; ++i) {
    const CircuitNode& node = full.node(i);
    if (node.kind == GateKind::Input || !live[i] || alias[i] != i) continue;
    std::vector<std::size_t> fanin;
    for (std::size_t f : node.fanin) fanin.push_back(renum[alias[f]]);
    renum[i] = result.circuit.add_gate(next_id++, node.kind, std::move(fanin));
    result.info.push_back(origin[i]);
  }
  result.circuit.set_output(renum[out]);
  result.plan = std::move(plan);
  return result;
}

inline LayeredCircuit checker_to_layered_circuit(const CheckerDecomposition& d) {
  return sweep_layered_plan(plan_layered_circuit(d));
}

// Monotone circuit that outputs 0 exactly when propagation forces z FALSE.
// Inputs are the formula's input variables in ascending order, labelled by
// their 1-based variable number; gates are numbered from |vars| + 1.
inline Circuit checker_to_circuit(const CheckerDecomposition& d) {
  return checker_to_layered_circuit(d).circuit;
}

// ---------------------------------------------------------------------------
// Monotone circuit -> checker
// ---------------------------------------------------------------------------

// Tseitin encoding with roles attached. Circuit input k stands for the k-th
// literal of map in (i, j) order; the result numbers those inputs densely from
// 0 in the same order.
inline CheckerDecomposition circuit_to_checker(const Circuit& s, const DirectEncodingMap& map) {
  if (!is_structurally_monotone(s))
    throw Refusal("circuit contains NOT gates; the Tseitin encoding of a non-monotone circuit "
                  "need not be propagation-complete");
  if (s.num_inputs() != map.num_literals())
    throw StructuralError("circuit has " + std::to_string(s.num_inputs()) + " inputs, encoding has " +
                          std::to_string(map.num_literals()) + " literals");
  const ClauseSet t = tseitin_encode(s);
  const DirectEncodingMap dense(map.domain_sizes());
  const auto xs = dense.propositional_vars();
  ClauseSet out;
  for (Var v = 0; v < t.num_vars(); ++v) {
    const VarInfo& vi = t.info(v);
    if (vi.role == Role::Input) out.add_variable(Role::Input, dense.literal(xs[v]));
    else out.add_variable(vi.role);
  }
  for (const Clause& c : t.clauses()) out.add_clause(c);
  return CheckerDecomposition(std::move(out), dense);
}

}  // namespace cnfdecomp
