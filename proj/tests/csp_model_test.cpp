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

#include <set>

#include "cnfdecomp/csp_model.hpp"
#include "support/generators.hpp"

namespace cnfdecomp {
namespace {

using S = DomainState;

TEST(DomainState, WipeoutAndSubset) {
  S full = S::full(std::vector<int>{3, 2});
  S s = full;
  s.erase(0, 1);
  EXPECT_TRUE(s.subset_of(full));
  EXPECT_FALSE(full.subset_of(s));
  EXPECT_EQ(s.values(0), (std::vector<int>{0, 2}));
  EXPECT_EQ(s.to_string(), "{0,2} {0,1}");
  s.erase(1, 0);
  s.erase(1, 1);
  EXPECT_TRUE(s.is_wipeout());
  EXPECT_TRUE(s.subset_of(S::full(std::vector<int>{3, 2})));
  EXPECT_EQ(s, S::wipeout({3, 2}));
}

TEST(DomainState, RejectsValuesOutsideInitialDomain) {
  EXPECT_THROW(S::from_masks({2}, {0b100}), PreconditionError);
  EXPECT_THROW(S::from_masks({2, 2}, {1}), PreconditionError);
}

TEST(ExtensionalConstraint, Invariants) {
  auto vars = make_variables({2, 2});
  EXPECT_THROW(ExtensionalConstraint(vars, {{0, 2}}), PreconditionError);
  EXPECT_THROW(ExtensionalConstraint(vars, {{0}}), PreconditionError);
  EXPECT_THROW(ExtensionalConstraint(vars, {{0, 1}, {0, 1}}), PreconditionError);
  EXPECT_NO_THROW(ExtensionalConstraint(vars, {}));
  EXPECT_THROW(make_variables({0}), PreconditionError);
  EXPECT_THROW(make_variables({65}), PreconditionError);
}

TEST(DirectEncodingMap, DenseBijection) {
  DirectEncodingMap m({3, 2}, 5);
  EXPECT_EQ(m.num_literals(), 5u);
  EXPECT_EQ(m.var(0, 0), 5u);
  EXPECT_EQ(m.var(1, 1), 9u);
  std::set<Var> seen;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < m.domain_size(i); ++j) {
      Var v = m.var(i, j);
      EXPECT_TRUE(seen.insert(v).second);
      ASSERT_TRUE(m.literal(v));
      EXPECT_EQ(m.literal(v)->variable, i);
      EXPECT_EQ(m.literal(v)->value, j);
    }
  EXPECT_FALSE(m.literal(0));
  EXPECT_EQ(m.at_least_one_clauses().size(), 2u);
  EXPECT_EQ(m.at_most_one_clauses().size(), 3u + 1u);
}

TEST(DirectEncodingMap, FromFormulaReadsAnnotations) {
  ClauseSet f;
  f.add_variable(Role::Auxiliary);
  f.add_variable(Role::Input, CspLiteral{0, 1});
  f.add_variable(Role::Input, CspLiteral{0, 0});
  DirectEncodingMap m = DirectEncodingMap::from_formula(f);
  EXPECT_EQ(m.domain_sizes(), std::vector<int>{2});
  EXPECT_EQ(m.var(0, 0), 2u);
  EXPECT_EQ(m.var(0, 1), 1u);

  ClauseSet g;
  g.add_variable(Role::Input, CspLiteral{0, 1});
  EXPECT_THROW(DirectEncodingMap::from_formula(g), StructuralError);
  ClauseSet h;
  h.add_variable(Role::Input);
  EXPECT_THROW(DirectEncodingMap::from_formula(h), StructuralError);
}

TEST(EncodeDomain, Examples) {
  DirectEncodingMap m({3});
  PartialAssignment a = encode_domain(S::from_masks({3}, {0b001}), m);
  EXPECT_EQ(a[0], Value::True);
  EXPECT_EQ(a[1], Value::False);
  EXPECT_EQ(a[2], Value::False);

  a = encode_domain(S::full(std::vector<int>{3}), m);
  for (Var v = 0; v < 3; ++v) EXPECT_EQ(a[v], Value::Unset);

  a = encode_domain(S::from_masks({3}, {0b011}), m);
  EXPECT_EQ(a.to_string(), "**F");

  a = encode_domain_false_only(S::from_masks({3}, {0b001}), m);
  EXPECT_EQ(a.to_string(), "*FF");
}

TEST(EncodeDomain, StructuralMismatch) {
  DirectEncodingMap m({2});
  EXPECT_THROW(encode_domain(S::full(std::vector<int>{2, 2}), m), StructuralError);
  EXPECT_THROW(encode_domain(S::full(std::vector<int>{3}), m), StructuralError);
}

TEST(DecodeAssignment, Examples) {
  DirectEncodingMap m({3});
  PartialAssignment a(3);
  a.set(1, Value::False);
  EXPECT_EQ(decode_assignment(a, m), S::from_masks({3}, {0b101}));
  EXPECT_EQ(decode_assignment(PartialAssignment(3), m), S::full(std::vector<int>{3}));
  // TRUE does not remove anything by itself
  a = PartialAssignment(3);
  a.set(0, Value::True);
  EXPECT_EQ(decode_assignment(a, m), S::full(std::vector<int>{3}));
}

TEST(EncodeDomain, RoundTripAndAntitone) {
  const std::vector<int> sizes{3, 2, 2};
  DirectEncodingMap m(sizes);
  std::vector<S> states;
  for (const S& s : enumerate_domain_states(make_variables(sizes))) states.push_back(s);
  ASSERT_EQ(states.size(), 7u * 3u * 3u);
  for (const S& s : states) {
    EXPECT_EQ(decode_assignment(encode_domain(s, m), m), s);
    EXPECT_EQ(decode_assignment(encode_domain_false_only(s, m), m), s);
  }
  // D' subset of D implies every FALSE of D is a FALSE of D'.
  for (const S& a : states)
    for (const S& b : states) {
      if (!a.subset_of(b)) continue;
      PartialAssignment ea = encode_domain(a, m), eb = encode_domain(b, m);
      for (Var v = 0; v < m.num_literals(); ++v)
        if (eb[v] == Value::False) EXPECT_EQ(ea[v], Value::False);
    }
}

TEST(Enumerate, Counts) {
  auto count = [](const std::vector<int>& sizes) {
    std::size_t n = 0;
    for ([[maybe_unused]] const S& s : enumerate_domain_states(make_variables(sizes))) ++n;
    return n;
  };
  EXPECT_EQ(count({2, 2}), 9u);
  EXPECT_EQ(count({1}), 1u);
  EXPECT_EQ(count({3, 3, 3}), 343u);
  for (const auto& sizes : std::vector<std::vector<int>>{{1, 4}, {2, 3, 1}, {5}}) {
    std::size_t expected = 1;
    for (int d : sizes) expected *= (std::size_t{1} << d) - 1;
    EXPECT_EQ(count(sizes), expected);
    EXPECT_EQ(enumerate_domain_states(make_variables(sizes)).count(), expected);
  }
}

TEST(Enumerate, OrderAndDistinct) {
  std::vector<S> seen;
  for (const S& s : enumerate_domain_states(make_variables({2, 2}))) seen.push_back(s);
  EXPECT_EQ(seen.front().to_string(), "{0} {0}");
  EXPECT_EQ(seen[1].to_string(), "{0} {1}");
  EXPECT_EQ(seen.back().to_string(), "{0,1} {0,1}");
  std::set<std::string> text;
  for (const S& s : seen) {
    EXPECT_FALSE(s.is_wipeout());
    text.insert(s.to_string());
  }
  EXPECT_EQ(text.size(), seen.size());
}

TEST(Enumerate, BudgetRefusal) {
  try {
    enumerate_domain_states(make_variables({10, 10, 10}));
    FAIL() << "expected refusal";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required_log2(), 30u);
    EXPECT_EQ(e.budget_log2(), kDefaultStateBudgetLog2);
  }
  EXPECT_NO_THROW(enumerate_domain_states(make_variables({10, 10, 10}), 30));
}

}  // namespace
}  // namespace cnfdecomp
