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


#include <gtest/gtest.h>

#include "cnfdecomp/decomposition.hpp"
#include "cnfdecomp/fixtures.hpp"
#include "cnfdecomp/oracle.hpp"
#include "cnfdecomp/transforms.hpp"
#include "support/generators.hpp"

namespace cnfdecomp {
namespace {

using namespace fixtures::ex12;
using S = DomainState;
using testing::Rng;
constexpr auto P = Lit::pos;
constexpr auto N = Lit::neg;

ClauseSet with_extra(const ClauseSet& f, std::vector<Clause> extra) {
  ClauseSet out = f;
  for (auto& c : extra) out.add_clause(std::move(c));
  return out;
}

// z FALSE after propagation, per representation, at every domain state.
void expect_same_checker(const CheckerDecomposition& a, const CheckerDecomposition& b) {
  for (Representation r : {Representation::Singletons, Representation::FalseOnly}) {
    CheckerFunction fa = induced_checker(a, r), fb = induced_checker(b, r);
    for (const S& s : enumerate_domain_states(a.encoding().variables()))
      ASSERT_EQ(fa(s), fb(s)) << s.to_string() << " " << to_string(r);
  }
}

// --- propagator -> checker -------------------------------------------------

TEST(PropagatorToChecker, ImplicationTriple) {
  ClauseSet f;
  for (int i = 0; i < 3; ++i) f.add_variable(Role::Input, CspLiteral{i, 0});
  f.add_clause({P(0), P(1), N(2)});
  PropagatorToChecker t = propagator_to_checker_detailed(PropagatorDecomposition(f));
  const ClauseSet& c = t.checker.formula();
  ASSERT_EQ(c.num_vars(), 10u);
  ASSERT_EQ(c.num_clauses(), 6u + 3u + 3u);
  const Var pt = 3, pf = 4, qt = 5, qf = 6, rt = 7, rf = 8;
  EXPECT_EQ(c.clause(6), (Clause{N(pf), N(qf), P(rf)}));
  EXPECT_EQ(c.clause(7), (Clause{N(pf), N(rt), P(qt)}));
  EXPECT_EQ(c.clause(8), (Clause{N(qf), N(rt), P(pt)}));
  EXPECT_EQ(c.clause(0), (Clause{N(0), P(pt)}));
  EXPECT_EQ(c.clause(1), (Clause{P(0), P(pf)}));
  EXPECT_EQ(c.clause(9), (Clause{N(pt), N(pf), N(9)}));
  EXPECT_EQ(t.checker.output(), 9u);
}

TEST(PropagatorToChecker, ZFalseIffConflict) {
  auto check = [](const PropagatorDecomposition& d) {
    CheckerDecomposition c = propagator_to_checker(d);
    const auto inputs = d.formula().inputs();
    testing::for_each_partial_assignment(inputs, d.formula().num_vars(), [&](const PartialAssignment& a) {
      bool conflict = unit_propagate(d.formula(), a).conflict;
      PartialAssignment b = a;
      b.resize(c.formula().num_vars());
      PropagationResult r = unit_propagate(c.formula(), b);
      ASSERT_FALSE(r.conflict);
      ASSERT_EQ(r.final[c.output()] == Value::False, conflict) << a.to_string();
    });
  };
  check(fixtures::example1_propagator());
  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) check(bacchus_table_encoding(testing::random_table(rng)));
}

TEST(PropagatorToChecker, Example1ValidatesAsChecker) {
  CheckerDecomposition c = propagator_to_checker(fixtures::example1_propagator());
  ValidationReport r = validate_checker_decomposition(c, enumeration_checker(fixtures::example1_table()),
                                                      {DirectEncodingMode::Bare});
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.states_checked, 9u);
}

TEST(PropagatorToChecker, EmptyFormulaNeverForcesZ) {
  ClauseSet f;
  f.add_variable(Role::Input, CspLiteral{0, 0});
  f.add_variable(Role::Input, CspLiteral{0, 1});
  CheckerDecomposition c = propagator_to_checker(PropagatorDecomposition(f));
  for (Representation r : {Representation::Singletons, Representation::FalseOnly})
    for (const S& s : enumerate_domain_states(make_variables({2})))
      EXPECT_TRUE(induced_checker(c, r)(s));
}

TEST(PropagatorToChecker, SizeBounds) {
  Rng rng(42);
  std::vector<PropagatorDecomposition> cases{fixtures::example1_propagator()};
  for (int i = 0; i < 20; ++i) cases.push_back(bacchus_table_encoding(testing::random_table(rng)));
  for (const auto& d : cases) {
    PropagatorToChecker t = propagator_to_checker_detailed(d);
    const std::size_t n = t.pairs.size();
    EXPECT_EQ(t.checker.formula().num_vars(), 3 * n + 1);
    EXPECT_LE(t.checker.formula().num_clauses(), 3 * n + 3 * t.split_formula_clauses);
    EXPECT_LE(t.checker.formula().num_clauses(), 10 * (d.formula().num_vars() + t.split_formula_clauses));
  }
}

// --- checker -> propagator -------------------------------------------------

TEST(CheckerToPropagator, Example2Copies) {
  CheckerDecomposition c = fixtures::example2_checker();
  PropagatorDecomposition p = checker_to_propagator(c);
  const ClauseSet& f = p.formula();
  EXPECT_EQ(f.inputs().size(), 4u);
  EXPECT_EQ(f.auxiliaries().size(), 4u * 4u);
  std::size_t bridges = 0;
  for (const Clause& cl : f.clauses())
    if (cl.size() == 2 && !cl[0].negative && f.role(cl[0].var) == Role::Auxiliary && cl[1].negative &&
        f.role(cl[1].var) == Role::Input)
      ++bridges;
  EXPECT_EQ(bridges, 4u);
  EXPECT_EQ(f.num_clauses(), 4u * 7u + 4u);

  PartialAssignment a(f.num_vars());
  a.set(p.encoding().var(0, 0), Value::False);
  PropagationResult r = unit_propagate(f, a);
  EXPECT_FALSE(r.conflict);
  EXPECT_EQ(r.final[p.encoding().var(1, 0)], Value::False);
  EXPECT_EQ(r.final[p.encoding().var(1, 1)], Value::Unset);
  EXPECT_EQ(r.final[p.encoding().var(0, 1)], Value::Unset);
}

TEST(CheckerToPropagator, PruningMatchesOracle) {
  auto check = [](const CheckerDecomposition& c, const ExtensionalConstraint& table) {
    PropagatorDecomposition p = checker_to_propagator(c);
    PropagatorFunction oracle = lift_checker_to_propagator(enumeration_checker(table));
    for (Representation r : {Representation::Singletons, Representation::FalseOnly}) {
      PropagatorFunction induced = induced_propagator(p, false, r);
      for (const S& s : enumerate_domain_states(table.scope()))
        ASSERT_EQ(induced(s), oracle(s)) << s.to_string() << " " << to_string(r);
      auto v = check_propagator_laws(induced, table.scope());
      ASSERT_FALSE(v) << v->law << " " << v->detail;
    }
    ValidationReport rep = validate_propagator_decomposition(p, oracle, {DirectEncodingMode::Augmented});
    ASSERT_TRUE(rep.passed()) << rep.to_text();
  };
  check(fixtures::example2_checker(), fixtures::example1_table());
  Rng rng(43);
  for (int trial = 0; trial < 15; ++trial) {
    ExtensionalConstraint t = testing::random_table(rng);
    check(testing::table_checker_encoding(t), t);
  }
}

TEST(CheckerToPropagator, NeverFalseCheckerNeverPrunes) {
  ClauseSet f;
  f.add_variable(Role::Input, CspLiteral{0, 0});
  f.add_variable(Role::Input, CspLiteral{0, 1});
  Var y = f.add_variable(Role::Auxiliary);
  Var z = f.add_variable(Role::Output);
  f.add_clause({N(y), P(0)});
  f.add_clause({P(0), P(1), N(z)});
  PropagatorDecomposition p = checker_to_propagator(CheckerDecomposition(f));
  PropagatorFunction induced = induced_propagator(p, false, Representation::FalseOnly);
  for (const S& s : enumerate_domain_states(make_variables({2}))) EXPECT_EQ(induced(s), s);
}

TEST(CheckerToPropagator, SizeBound) {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    CheckerDecomposition c = testing::table_checker_encoding(testing::random_table(rng));
    PropagatorDecomposition p = checker_to_propagator(c);
    const std::size_t x = c.input_count();
    EXPECT_LE(p.formula().num_clauses(), x * c.formula().num_clauses() + x);
    EXPECT_EQ(p.formula().num_vars(), x + x * (c.formula().num_vars() - x));
  }
}

// --- normalization ---------------------------------------------------------

TEST(Strip, SubstituteExample) {
  ClauseSet f;
  f.add_variable(Role::Input, CspLiteral{0, 0});  // x11
  f.add_variable(Role::Input, CspLiteral{1, 0});  // x21
  f.add_variable(Role::Input, CspLiteral{1, 1});  // x22
  f.add_variable(Role::Input, CspLiteral{1, 2});  // x23
  Var y = f.add_variable(Role::Auxiliary);
  Var z = f.add_variable(Role::Output);
  f.add_clause({P(0), N(2), N(y)});
  f.add_clause({P(y), N(z)});
  CheckerDecomposition d(f);
  CheckerDecomposition sub = strip_negative_input_literals(d, StripMode::Substitute);
  EXPECT_EQ(sub.formula().clause(0), (Clause{P(0), P(1), P(3), N(y)}));
  EXPECT_EQ(sub.formula().clause(1), (Clause{P(y), N(z)}));
  CheckerDecomposition rem = strip_negative_input_literals(d, StripMode::Remove);
  EXPECT_EQ(rem.formula().num_clauses(), 1u);
}

TEST(Strip, NoNegativeInputsUnchanged) {
  CheckerDecomposition d = fixtures::example2_checker();
  EXPECT_EQ(strip_negative_input_literals(d, StripMode::Remove).formula(), d.formula());
  EXPECT_EQ(strip_negative_input_literals(d, StripMode::Substitute).formula(), d.formula());
}

TEST(Strip, ModesAgreeOnValidMutants) {
  Rng rng(45);
  CheckerDecomposition base = fixtures::example2_checker();
  CheckerFunction oracle = enumeration_checker(fixtures::example1_table());
  int valid = 0;
  for (int trial = 0; trial < 200 && valid < 25; ++trial) {
    std::vector<Clause> extra;
    const int k = testing::uniform(rng, 1, 2);
    for (int e = 0; e < k; ++e) {
      std::set<Var> vars;
      vars.insert(static_cast<Var>(testing::uniform(rng, 0, 3)));  // a negative input
      while (static_cast<int>(vars.size()) < testing::uniform(rng, 2, 3))
        vars.insert(static_cast<Var>(testing::uniform(rng, 0, 7)));
      Clause c;
      bool first = true;
      for (Var v : vars) {
        c.push_back(Lit{v, first || testing::uniform(rng, 0, 1) == 1});
        first = false;
      }
      extra.push_back(c);
    }
    CheckerDecomposition mutant(with_extra(base.formula(), extra));
    if (!validate_checker_decomposition(mutant, oracle, {DirectEncodingMode::Bare}).passed()) continue;
    ++valid;
    CheckerDecomposition rem = strip_negative_input_literals(mutant, StripMode::Remove);
    CheckerDecomposition sub = strip_negative_input_literals(mutant, StripMode::Substitute);
    expect_same_checker(rem, sub);
    expect_same_checker(rem, mutant);
  }
  EXPECT_GT(valid, 3);
}

TEST(Polarity, Example2Unchanged) {
  PolarityNormalization n = normalize_auxiliary_polarity_detailed(fixtures::example2_checker());
  EXPECT_TRUE(n.flipped.empty());
  EXPECT_EQ(n.checker.formula(), fixtures::example2_checker().formula());
}

TEST(Polarity, FlipsNegatedAuxiliaryBack) {
  std::vector<Clause> clauses = fixtures::example2_checker().formula().clauses();
  for (Clause& c : clauses)
    for (Lit& l : c)
      if (l.var == y1) l = ~l;
  CheckerDecomposition mutated = rebuild(fixtures::example2_checker().formula(), clauses,
                                         fixtures::example2_checker().encoding());
  PolarityNormalization n = normalize_auxiliary_polarity_detailed(mutated);
  EXPECT_EQ(n.flipped, std::vector<Var>{y1});
  EXPECT_EQ(n.checker.formula(), fixtures::example2_checker().formula());
}

TEST(Polarity, NoAuxiliaries) {
  ClauseSet f;
  f.add_variable(Role::Input, CspLiteral{0, 0});
  f.add_variable(Role::Input, CspLiteral{0, 1});
  Var z = f.add_variable(Role::Output);
  f.add_clause({P(0), N(z)});
  PolarityNormalization n = normalize_auxiliary_polarity_detailed(CheckerDecomposition(f));
  EXPECT_TRUE(n.flipped.empty());
  EXPECT_EQ(n.checker.formula(), f);
}

TEST(Polarity, BudgetRefusal) {
  EXPECT_THROW(normalize_auxiliary_polarity(fixtures::example2_checker(), 2), BudgetExceeded);
}

TEST(ExactlyOneNegative, Forms) {
  CheckerDecomposition d = fixtures::example4_checker();
  EXPECT_TRUE(is_exactly_one_negative_form(d.formula()));
  EXPECT_EQ(to_exactly_one_negative_form(d).formula(), d.formula());

  const Var y1v = 7, y2v = 8;
  CheckerDecomposition extra(with_extra(d.formula(), {{N(y1v), N(y2v), P(2)}}));
  EXPECT_FALSE(is_exactly_one_negative_form(extra.formula()));
  EXPECT_EQ(to_exactly_one_negative_form(extra).formula(), d.formula());

  CheckerDecomposition bad(with_extra(d.formula(), {{P(y1v), P(y2v)}}));
  EXPECT_THROW(to_exactly_one_negative_form(bad), NormalizationFailure);

  EXPECT_THROW(to_exactly_one_negative_form(propagator_to_checker(fixtures::example1_propagator())),
               PreconditionError);
}

TEST(NormalizePipeline, ExampleCheckersStable) {
  CheckerDecomposition d = fixtures::example2_checker();
  EXPECT_EQ(normalize_checker(d, StripMode::Remove).formula(), d.formula());
  CheckerDecomposition e = fixtures::example4_checker();
  EXPECT_EQ(normalize_checker(e, StripMode::Substitute).formula(), e.formula());
}

TEST(NormalizePipeline, TseitinOfMonotoneCircuits) {
  Rng rng(46);
  for (int trial = 0; trial < 25; ++trial) {
    Circuit s = testing::random_monotone_circuit(rng, 6, 15);
    DirectEncodingMap map({static_cast<int>(s.num_inputs())});
    CheckerDecomposition c = circuit_to_checker(s, map);
    CheckerDecomposition n = normalize_checker(c, StripMode::Remove);
    ASSERT_TRUE(is_exactly_one_negative_form(n.formula()));
    expect_same_checker(n, c);
    Circuit back = checker_to_circuit(n);
    for (const S& st : enumerate_domain_states(map.variables()))
      ASSERT_EQ(evaluate(back, build_circuit_input(st, map)), evaluate(s, build_circuit_input(st, map)));
  }
}

// Substituting into a self-contained encoding creates all-positive clauses
// that force g = OR(x5) TRUE at D = {x5}, while D = {x1} forces it FALSE; both
// states force z FALSE, so no renaming exists.
TEST(NormalizePipeline, SubstituteCanDefeatPolarityNormalization) {
  Circuit s = read_gate_list_string(
      "input 1\ninput 2\ninput 3\ninput 4\ninput 5\n"
      "gate 6 OR 5\ngate 7 OR 3 4 6\ngate 8 OR 2 3 4\ngate 9 AND 3 4 7\noutput 9\n");
  CheckerDecomposition c = circuit_to_checker(s, DirectEncodingMap({5}));
  EXPECT_THROW(normalize_checker(c, StripMode::Substitute), NormalizationFailure);
  EXPECT_NO_THROW(normalize_checker(c, StripMode::Remove));
}

TEST(ExactlyOneNegative, DropsPositiveClauseOnZ) {
  ClauseSet f;
  f.add_variable(Role::Input, CspLiteral{0, 0});
  Var z = f.add_variable(Role::Output);
  f.add_clause({P(z)});
  EXPECT_EQ(to_exactly_one_negative_form(CheckerDecomposition(f)).formula().num_clauses(), 0u);
}

// --- checker -> circuit ----------------------------------------------------

TEST(CheckerToCircuit, Example4LayeredStructure) {
  LayeredCircuit lc = checker_to_layered_circuit(fixtures::example4_checker());
  EXPECT_EQ(lc.plan.layers, 3u);
  EXPECT_EQ(lc.circuit, fixtures::example4_circuit());
  EXPECT_EQ(lc.circuit.num_gates(), 9u);
  std::map<std::size_t, int> per_layer;
  std::vector<int> variable_gate_ids;
  for (std::size_t i = 0; i < lc.circuit.nodes().size(); ++i) {
    if (lc.info[i].origin == GateOrigin::Input) continue;
    ++per_layer[lc.info[i].layer];
    if (lc.info[i].origin == GateOrigin::Variable) variable_gate_ids.push_back(lc.circuit.node(i).id);
  }
  EXPECT_EQ(per_layer, (std::map<std::size_t, int>{{1, 2}, {2, 6}, {3, 1}}));
  EXPECT_EQ(variable_gate_ids, (std::vector<int>{17, 18}));
}

TEST(CheckerToCircuit, SingleClause) {
  ClauseSet f;
  f.add_variable(Role::Input, CspLiteral{0, 0});
  Var z = f.add_variable(Role::Output);
  f.add_clause({P(0), N(z)});
  Circuit s = checker_to_circuit(CheckerDecomposition(f));
  EXPECT_EQ(s.num_gates(), 1u);
  EXPECT_TRUE(evaluate(s, {true}));
  EXPECT_FALSE(evaluate(s, {false}));
}

TEST(CheckerToCircuit, UndefinedOutputIsConstantOne) {
  ClauseSet f;
  f.add_variable(Role::Input, CspLiteral{0, 0});
  Var y = f.add_variable(Role::Auxiliary);
  Var z = f.add_variable(Role::Output);
  f.add_clause({P(0), N(y)});
  (void)z;
  LayeredCircuit lc = checker_to_layered_circuit(CheckerDecomposition(f));
  EXPECT_TRUE(evaluate(lc.circuit, {false}));
  EXPECT_FALSE(lc.plan.omissions.empty());
}

TEST(CheckerToCircuit, RefusesOutsideForm) {
  EXPECT_THROW(checker_to_circuit(propagator_to_checker(fixtures::example1_propagator())), Refusal);
}

TEST(CheckerToCircuit, RandomCheckersMatchPropagation) {
  Rng rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    CheckerDecomposition c = testing::random_exactly_one_negative_checker(rng);
    LayeredCircuit lc = checker_to_layered_circuit(c);
    ASSERT_TRUE(is_structurally_monotone(lc.circuit));
    const auto inputs = c.formula().inputs();
    auto run = [&](const PartialAssignment& a) {
      PropagationResult r = unit_propagate(c.formula(), a);
      ASSERT_FALSE(r.conflict);
      bool z_false = r.final[c.output()] == Value::False;
      CircuitInput b = circuit_input_from(a, inputs);
      ASSERT_EQ(evaluate(lc.circuit, b), !z_false) << a.to_string();
      ASSERT_EQ(evaluate(lc.plan.circuit, b), !z_false) << a.to_string();
    };
    testing::for_each_complete_assignment(inputs, c.formula().num_vars(), run);
    testing::for_each_partial_assignment(inputs, c.formula().num_vars(), run);
  }
}

// Variable gate of layer i is 0 iff propagation forces the variable FALSE
// within i breadth-first rounds.
TEST(CheckerToCircuit, LayersFollowPropagationRounds) {
  Rng rng(48);
  std::vector<CheckerDecomposition> cases{fixtures::example4_checker()};
  for (int i = 0; i < 30; ++i) cases.push_back(testing::random_exactly_one_negative_checker(rng));
  for (const auto& c : cases) {
    LayeredCircuitPlan plan = plan_layered_circuit(c);
    const auto inputs = c.formula().inputs();
    testing::for_each_partial_assignment(inputs, c.formula().num_vars(), [&](const PartialAssignment& a) {
      RoundResult rr = propagate_breadth_first(c.formula(), a);
      ASSERT_FALSE(rr.conflict);
      std::vector<bool> val = evaluate_all(plan.circuit, circuit_input_from(a, inputs));
      for (std::size_t layer = 1; layer <= plan.layers; ++layer)
        for (std::size_t k = 0; k < plan.gate_vars.size(); ++k) {
          const int rnd = rr.round[plan.gate_vars[k]];
          const bool forced = rnd >= 1 && static_cast<std::size_t>(rnd) <= layer;
          const auto g = plan.variable_gates[layer - 1][k];
          const bool gate_zero = g && !val[*g];
          ASSERT_EQ(gate_zero, forced) << "layer " << layer << " var " << plan.gate_vars[k] + 1;
        }
    });
  }
}

TEST(CheckerToCircuit, SizeBound) {
  Rng rng(49);
  for (int i = 0; i < 30; ++i) {
    CheckerDecomposition c = testing::random_exactly_one_negative_checker(rng);
    LayeredCircuit lc = checker_to_layered_circuit(c);
    const std::size_t gv = lc.plan.gate_vars.size();
    EXPECT_LE(lc.plan.circuit.num_gates(), gv * (c.formula().num_clauses() + gv) + 1);
    EXPECT_LE(lc.circuit.num_gates(), lc.plan.circuit.num_gates());
  }
}

// --- circuit -> checker ----------------------------------------------------

TEST(CircuitToChecker, Example4RoundTrip) {
  CheckerDecomposition c = circuit_to_checker(fixtures::example4_circuit(), DirectEncodingMap({7}));
  expect_same_checker(c, fixtures::example4_checker());
}

TEST(CircuitToChecker, RefusesNonMonotone) {
  EXPECT_THROW(circuit_to_checker(fixtures::example3_circuit(), DirectEncodingMap({2})), Refusal);
  EXPECT_THROW(circuit_to_checker(fixtures::example4_circuit(), DirectEncodingMap({2, 2})), StructuralError);
}

TEST(CircuitToChecker, TrivialAccept) {
  Circuit s;
  s.add_input(1);
  s.add_gate(2, GateKind::Or, {0, 0});
  s.set_output(1);
  CheckerDecomposition c = circuit_to_checker(s, DirectEncodingMap({1}));
  EXPECT_TRUE(induced_checker(c)(S::full(std::vector<int>{1})));
}

TEST(CircuitToChecker, RoundTripThroughCircuit) {
  Rng rng(50);
  for (int trial = 0; trial < 40; ++trial) {
    CheckerDecomposition c = testing::random_exactly_one_negative_checker(rng);
    Circuit s = checker_to_circuit(c);
    CheckerDecomposition back = circuit_to_checker(s, c.encoding());
    Circuit again = checker_to_circuit(normalize_checker(back, StripMode::Remove));
    const auto inputs = c.formula().inputs();
    testing::for_each_complete_assignment(inputs, c.formula().num_vars(), [&](const PartialAssignment& a) {
      ASSERT_EQ(evaluate(again, circuit_input_from(a, inputs)), evaluate(s, circuit_input_from(a, inputs)));
    });
    testing::for_each_partial_assignment(inputs, c.formula().num_vars(), [&](const PartialAssignment& a) {
      bool z1 = unit_propagate(c.formula(), a).final[c.output()] == Value::False;
      PartialAssignment b = a;
      b.resize(back.formula().num_vars());
      bool z2 = unit_propagate(back.formula(), b).final[back.output()] == Value::False;
      ASSERT_EQ(z1, z2) << a.to_string();
    });
  }
}

}  // namespace
}  // namespace cnfdecomp
