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

// Propagator and checker decompositions and their exhaustive validators.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cnfdecomp/cnf.hpp"
#include "cnfdecomp/csp_model.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

namespace detail {

inline void check_encoding(const ClauseSet& f, const DirectEncodingMap& map) {
  for (Var v : f.inputs()) {
    auto lit = map.literal(v);
    if (!lit) throw StructuralError("input variable " + std::to_string(v + 1) + " is not in the encoding");
    if (f.info(v).literal && *f.info(v).literal != *lit)
      throw StructuralError("input variable " + std::to_string(v + 1) + " disagrees with the encoding");
  }
  for (Var v : map.propositional_vars())
    if (v >= f.num_vars() || f.role(v) != Role::Input)
      throw StructuralError("encoded variable " + std::to_string(v + 1) + " is not an input");
}

}  // namespace detail

// C_P over inputs x and auxiliaries y.
class PropagatorDecomposition {
 public:
  PropagatorDecomposition(ClauseSet formula, DirectEncodingMap encoding)
      : formula_(std::move(formula)), encoding_(std::move(encoding)) {
    detail::check_encoding(formula_, encoding_);
    if (formula_.output()) throw StructuralError("propagator decomposition has an output variable");
  }
  explicit PropagatorDecomposition(ClauseSet formula)
      : PropagatorDecomposition(formula, DirectEncodingMap::from_formula(formula)) {}

  const ClauseSet& formula() const { return formula_; }
  const DirectEncodingMap& encoding() const { return encoding_; }
  std::size_t input_count() const { return encoding_.num_literals(); }
  std::size_t auxiliary_count() const { return formula_.auxiliaries().size(); }

 private:
  ClauseSet formula_;
  DirectEncodingMap encoding_;
};

// C_C over inputs x, auxiliaries y and the output z.
class CheckerDecomposition {
 public:
  CheckerDecomposition(ClauseSet formula, DirectEncodingMap encoding)
      : formula_(std::move(formula)), encoding_(std::move(encoding)) {
    detail::check_encoding(formula_, encoding_);
    if (!formula_.output()) throw StructuralError("checker decomposition needs an output variable");
  }
  explicit CheckerDecomposition(ClauseSet formula)
      : CheckerDecomposition(formula, DirectEncodingMap::from_formula(formula)) {}

  const ClauseSet& formula() const { return formula_; }
  const DirectEncodingMap& encoding() const { return encoding_; }
  Var output() const { return *formula_.output(); }
  std::size_t input_count() const { return encoding_.num_literals(); }
  std::size_t auxiliary_count() const { return formula_.auxiliaries().size(); }

 private:
  ClauseSet formula_;
  DirectEncodingMap encoding_;
};

// Whether the direct encoding's at-most-one / at-least-one clauses sit next to
// the decomposition during propagation.
enum class DirectEncodingMode { Bare, Augmented, Auto };

inline const char* to_string(DirectEncodingMode m) {
  switch (m) {
    case DirectEncodingMode::Bare: return "bare";
    case DirectEncodingMode::Augmented: return "augmented";
    case DirectEncodingMode::Auto: return "auto";
  }
  return "?";
}

// The two propositional pictures of one domain state: singleton values TRUE,
// or FALSE literals only.
enum class Representation { Singletons, FalseOnly };

inline const char* to_string(Representation r) {
  return r == Representation::Singletons ? "singletons" : "false-only";
}

inline PartialAssignment encode(const DomainState& s, const DirectEncodingMap& map, Representation r) {
  return r == Representation::Singletons ? encode_domain(s, map) : encode_domain_false_only(s, map);
}

// f followed by the at-most-one then at-least-one clauses of the encoding.
inline ClauseSet with_direct_encoding(const ClauseSet& f, const DirectEncodingMap& map) {
  ClauseSet out = f;
  for (auto& c : map.at_most_one_clauses()) out.add_clause(std::move(c));
  for (auto& c : map.at_least_one_clauses()) out.add_clause(std::move(c));
  return out;
}

struct Counterexample {
  DomainState state;
  Representation representation = Representation::Singletons;
  std::string expected;
  std::string observed;
};

struct ValidationReport {
  DirectEncodingMode mode = DirectEncodingMode::Bare;
  std::size_t states_checked = 0;
  std::vector<Counterexample> counterexamples;

  bool passed() const { return counterexamples.empty(); }

  std::string to_text() const {
    std::ostringstream os;
    os << "verdict " << (passed() ? "pass" : "fail") << '\n';
    os << "mode " << to_string(mode) << '\n';
    os << "states " << states_checked << '\n';
    for (const auto& c : counterexamples)
      os << "counterexample [" << c.state.to_string() << "] " << to_string(c.representation)
         << " expected: " << c.expected << " observed: " << c.observed << '\n';
    return os.str();
  }
};

struct ValidateOptions {
  DirectEncodingMode mode = DirectEncodingMode::Auto;
  std::size_t budget_log2 = kDefaultStateBudgetLog2;
};

namespace detail {

inline constexpr Representation kRepresentations[] = {Representation::Singletons,
                                                      Representation::FalseOnly};

inline std::string var_name(const ClauseSet& f, Var v) {
  if (auto lit = f.info(v).literal)
    return "x" + std::to_string(lit->variable) + "=" + std::to_string(lit->value);
  return "v" + std::to_string(v + 1);
}

inline ValidationReport check_checker(const CheckerDecomposition& d, const CheckerFunction& oracle,
                                      bool augmented, std::size_t budget_log2) {
  const ClauseSet f = augmented ? with_direct_encoding(d.formula(), d.encoding()) : d.formula();
  const UnitPropagator up(f);
  const auto inputs = f.inputs();
  const Var z = d.output();
  ValidationReport rep;
  rep.mode = augmented ? DirectEncodingMode::Augmented : DirectEncodingMode::Bare;
  for (const DomainState& s : enumerate_domain_states(d.encoding().variables(), budget_log2)) {
    ++rep.states_checked;
    const bool expected = oracle(s);
    for (Representation r : kRepresentations) {
      PartialAssignment a = encode(s, d.encoding(), r);
      PropagationResult res = up.propagate(a);
      if (res.conflict) {
        rep.counterexamples.push_back(
            {s, r, "no conflict", "conflict in clause " + std::to_string(*res.conflict_clause + 1)});
        continue;
      }
      std::string forced;
      for (Var v : inputs)
        if (a[v] != res.final[v]) forced += (forced.empty() ? "" : ",") + var_name(f, v) + ":" + to_char(res.final[v]);
      if (!forced.empty()) rep.counterexamples.push_back({s, r, "no input forced", "forced " + forced});
      const bool z_false = res.final[z] == Value::False;
      if (z_false == expected)
        rep.counterexamples.push_back({s, r, expected ? "z not F (checker 1)" : "z=F (checker 0)",
                                       std::string("z=") + to_char(res.final[z])});
    }
  }
  return rep;
}

inline ValidationReport check_propagator(const PropagatorDecomposition& d,
                                         const PropagatorFunction& oracle, bool augmented,
                                         std::size_t budget_log2) {
  const ClauseSet f = augmented ? with_direct_encoding(d.formula(), d.encoding()) : d.formula();
  const UnitPropagator up(f);
  ValidationReport rep;
  rep.mode = augmented ? DirectEncodingMode::Augmented : DirectEncodingMode::Bare;
  for (const DomainState& s : enumerate_domain_states(d.encoding().variables(), budget_log2)) {
    ++rep.states_checked;
    const DomainState expected = oracle(s);
    for (Representation r : kRepresentations) {
      PropagationResult res = up.propagate(encode(s, d.encoding(), r));
      if (expected.is_wipeout()) {
        if (!res.conflict)
          rep.counterexamples.push_back(
              {s, r, "conflict", "no conflict, domains [" + decode_assignment(res.final, d.encoding()).to_string() + "]"});
        continue;
      }
      if (res.conflict) {
        rep.counterexamples.push_back({s, r, "[" + expected.to_string() + "]", "conflict"});
        continue;
      }
      DomainState got = decode_assignment(res.final, d.encoding());
      if (!(got == expected))
        rep.counterexamples.push_back({s, r, "[" + expected.to_string() + "]", "[" + got.to_string() + "]"});
    }
  }
  return rep;
}

template <typename Check>
ValidationReport run_modes(DirectEncodingMode mode, Check check) {
  if (mode == DirectEncodingMode::Bare) return check(false);
  if (mode == DirectEncodingMode::Augmented) return check(true);
  ValidationReport bare = check(false);
  if (bare.passed()) return bare;
  ValidationReport aug = check(true);
  return aug.passed() ? aug : bare;
}

}  // namespace detail

// Checks at every domain state, under both representations, that propagation
// neither forces an input nor conflicts, and that z is forced FALSE exactly
// when the oracle returns 0. Auto mode tries bare first and reports the mode
// that passed.
inline ValidationReport validate_checker_decomposition(const CheckerDecomposition& d,
                                                       const CheckerFunction& oracle,
                                                       const ValidateOptions& opt = {}) {
  return detail::run_modes(opt.mode, [&](bool augmented) {
    return detail::check_checker(d, oracle, augmented, opt.budget_log2);
  });
}

// Checks at every domain state, under both representations, that the inputs
// forced FALSE are exactly the oracle's prunings and that propagation conflicts
// exactly when the oracle wipes out.
inline ValidationReport validate_propagator_decomposition(const PropagatorDecomposition& d,
                                                          const PropagatorFunction& oracle,
                                                          const ValidateOptions& opt = {}) {
  return detail::run_modes(opt.mode, [&](bool augmented) {
    return detail::check_propagator(d, oracle, augmented, opt.budget_log2);
  });
}

// The propagator a decomposition induces through unit propagation. A conflict
// or an emptied domain yields the canonical wipeout.
inline PropagatorFunction induced_propagator(const PropagatorDecomposition& d, bool augmented,
                                             Representation rep = Representation::Singletons) {
  auto f = std::make_shared<ClauseSet>(augmented ? with_direct_encoding(d.formula(), d.encoding())
                                                 : d.formula());
  auto up = std::make_shared<UnitPropagator>(*f);
  DirectEncodingMap map = d.encoding();
  return [f, up, map, rep](const DomainState& s) {
    if (s.is_wipeout()) return DomainState::wipeout(s.domain_sizes());
    PropagationResult res = up->propagate(encode(s, map, rep));
    DomainState out = decode_assignment(res.final, map);
    if (res.conflict || out.is_wipeout()) return DomainState::wipeout(s.domain_sizes());
    return out;
  };
}

// 0 iff propagation forces z FALSE.
inline CheckerFunction induced_checker(const CheckerDecomposition& d,
                                       Representation rep = Representation::Singletons) {
  auto f = std::make_shared<ClauseSet>(d.formula());
  auto up = std::make_shared<UnitPropagator>(*f);
  DirectEncodingMap map = d.encoding();
  Var z = d.output();
  return [f, up, map, rep, z](const DomainState& s) {
    if (s.is_wipeout()) return false;
    return up->propagate(encode(s, map, rep)).final[z] != Value::False;
  };
}

}  // namespace cnfdecomp
