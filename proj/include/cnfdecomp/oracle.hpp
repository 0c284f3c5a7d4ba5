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

// Ground-truth checkers and propagators used to validate decompositions.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cnfdecomp/cnf.hpp"
#include "cnfdecomp/csp_model.hpp"
#include "cnfdecomp/decomposition.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

// 1 iff some tuple lies entirely inside the current domains. Scope position p
// reads domain-state variable scope[p].id.
inline CheckerFunction enumeration_checker(const ExtensionalConstraint& c) {
  return [c](const DomainState& s) {
    for (const auto& t : c.tuples()) {
      bool inside = true;
      for (std::size_t p = 0; p < t.size() && inside; ++p) inside = s.contains(c.scope()[p].id, t[p]);
      if (inside) return true;
    }
    return false;
  };
}

// f_P(D) = D \ { X_i = j : f(D|_{X_i=j}) = 0 }, wipeout when a domain empties.
inline PropagatorFunction lift_checker_to_propagator(CheckerFunction f) {
  return [f = std::move(f)](const DomainState& s) {
    if (s.is_wipeout()) return DomainState::wipeout(s.domain_sizes());
    DomainState out = s;
    for (std::size_t i = 0; i < s.num_vars(); ++i)
      for (int j : s.values(static_cast<int>(i)))
        if (!f(s.restricted(static_cast<int>(i), j))) out.erase(static_cast<int>(i), j);
    if (out.is_wipeout()) return DomainState::wipeout(s.domain_sizes());
    return out;
  };
}

// f_C(D) = 0 iff f_P(D) is a wipeout.
inline CheckerFunction checker_from_propagator(PropagatorFunction p) {
  return [p = std::move(p)](const DomainState& s) { return !p(s).is_wipeout(); };
}

// Whether the value graph of the first n variables has a matching that
// saturates every variable (augmenting paths, variables in index order).
inline bool alldifferent_checker(std::size_t n, const DomainState& state) {
  if (n > state.num_vars()) throw StructuralError("AllDifferent over more variables than the state has");
  int max_value = 0;
  for (std::size_t i = 0; i < n; ++i) max_value = std::max(max_value, state.domain_size(static_cast<int>(i)));
  std::vector<int> owner(static_cast<std::size_t>(max_value), -1);

  std::function<bool(int, std::vector<char>&)> augment = [&](int var, std::vector<char>& seen) {
    for (int j : state.values(var)) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] < 0 || augment(owner[j], seen)) {
        owner[j] = var;
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> seen(static_cast<std::size_t>(max_value), 0);
    if (!augment(static_cast<int>(i), seen)) return false;
  }
  return true;
}

inline CheckerFunction alldifferent_checker_function(std::size_t n) {
  return [n](const DomainState& s) { return alldifferent_checker(n, s); };
}

// Table of all pairwise-distinct tuples, n variables over d values.
inline ExtensionalConstraint alldifferent_table(int n, int d) {
  std::vector<ExtensionalConstraint::Tuple> tuples;
  ExtensionalConstraint::Tuple t(static_cast<std::size_t>(n), 0);
  std::function<void(int, unsigned long long)> rec = [&](int pos, unsigned long long used) {
    if (pos == n) {
      tuples.push_back(t);
      return;
    }
    for (int v = 0; v < d; ++v) {
      if ((used >> v) & 1) continue;
      t[pos] = v;
      rec(pos + 1, used | (1ULL << v));
    }
  };
  rec(0, 0);
  return ExtensionalConstraint(make_variables(std::vector<int>(static_cast<std::size_t>(n), d)), tuples);
}

struct BacchusOptions {
  bool at_most_one = false;   // append the direct encoding's at-most-one clauses
  bool at_least_one = false;  // append the direct encoding's at-least-one clauses
};

// Inputs x_{p,v} come first in (position, value) order, then one auxiliary per
// tuple. Clauses: supports (-x_{p,v} y_t ...) in literal order, or the unit
// (-x_{p,v}) for an unsupported literal; then (-y_t x_{p,t_p}) per tuple and
// position; then the at-least-one-tuple clause (y_1 ... y_m).
inline PropagatorDecomposition bacchus_table_encoding(const ExtensionalConstraint& c,
                                                      const BacchusOptions& opt = {}) {
  if (c.tuples().empty()) throw Refusal("table has no tuples; there is no encoding to build");
  const auto sizes = c.domain_sizes();
  DirectEncodingMap map(sizes);
  ClauseSet f;
  for (std::size_t p = 0; p < sizes.size(); ++p)
    for (int v = 0; v < sizes[p]; ++v) f.add_variable(Role::Input, CspLiteral{static_cast<int>(p), v});
  std::vector<Var> y;
  for (std::size_t t = 0; t < c.tuples().size(); ++t) y.push_back(f.add_variable(Role::Auxiliary));

  for (std::size_t p = 0; p < sizes.size(); ++p)
    for (int v = 0; v < sizes[p]; ++v) {
      Clause cl{Lit::neg(map.var(static_cast<int>(p), v))};
      for (std::size_t t = 0; t < c.tuples().size(); ++t)
        if (c.tuples()[t][p] == v) cl.push_back(Lit::pos(y[t]));
      f.add_clause(std::move(cl));
    }
  for (std::size_t t = 0; t < c.tuples().size(); ++t)
    for (std::size_t p = 0; p < sizes.size(); ++p)
      f.add_clause({Lit::neg(y[t]), Lit::pos(map.var(static_cast<int>(p), c.tuples()[t][p]))});
  Clause any;
  for (Var v : y) any.push_back(Lit::pos(v));
  f.add_clause(std::move(any));

  if (opt.at_most_one)
    for (auto& cl : map.at_most_one_clauses()) f.add_clause(std::move(cl));
  if (opt.at_least_one)
    for (auto& cl : map.at_least_one_clauses()) f.add_clause(std::move(cl));
  return PropagatorDecomposition(std::move(f), std::move(map));
}

// Pointwise law checks over every enumerated state (and every comparable pair
// for monotonicity). Each returns the first violation found, if any.
struct LawViolation {
  std::string law;
  std::string detail;
};

inline std::optional<LawViolation> check_checker_monotone(const CheckerFunction& f,
                                                          const std::vector<CspVariable>& vars,
                                                          std::size_t budget_log2 = kDefaultStateBudgetLog2) {
  std::vector<DomainState> states;
  for (const auto& s : enumerate_domain_states(vars, budget_log2)) states.push_back(s);
  std::vector<char> value;
  for (const auto& s : states) value.push_back(f(s));
  for (std::size_t a = 0; a < states.size(); ++a) {
    if (!value[a]) continue;
    for (std::size_t b = 0; b < states.size(); ++b)
      if (!value[b] && states[a].subset_of(states[b]))
        return LawViolation{"monotone", "f[" + states[a].to_string() + "]=1 but f[" +
                                            states[b].to_string() + "]=0"};
  }
  return std::nullopt;
}

inline std::optional<LawViolation> check_propagator_laws(const PropagatorFunction& f,
                                                         const std::vector<CspVariable>& vars,
                                                         std::size_t budget_log2 = kDefaultStateBudgetLog2) {
  std::vector<DomainState> states, image;
  for (const auto& s : enumerate_domain_states(vars, budget_log2)) {
    states.push_back(s);
    image.push_back(f(s));
  }
  for (std::size_t a = 0; a < states.size(); ++a) {
    if (!image[a].subset_of(states[a]))
      return LawViolation{"contracting", "f[" + states[a].to_string() + "] = [" + image[a].to_string() + "]"};
    DomainState again = image[a].is_wipeout() ? image[a] : f(image[a]);
    if (!(again == image[a]))
      return LawViolation{"idempotent", "at [" + states[a].to_string() + "]"};
  }
  for (std::size_t a = 0; a < states.size(); ++a)
    for (std::size_t b = 0; b < states.size(); ++b)
      if (a != b && states[a].subset_of(states[b]) && !image[a].subset_of(image[b]))
        return LawViolation{"monotone", "[" + states[a].to_string() + "] within [" +
                                            states[b].to_string() + "] but images are not"};
  return std::nullopt;
}

}  // namespace cnfdecomp
