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

// Clause sets with variable roles, counter-based unit propagation, the
// breadth-first round variant, the failed literal test and 3-CNF splitting.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

using Var = std::uint32_t;

struct Lit {
  Var var = 0;
  bool negative = false;

  static constexpr Lit pos(Var v) { return Lit{v, false}; }
  static constexpr Lit neg(Var v) { return Lit{v, true}; }

  constexpr Lit operator~() const { return Lit{var, !negative}; }
  friend constexpr auto operator<=>(const Lit&, const Lit&) = default;
};

inline std::string to_string(Lit l) {
  return (l.negative ? "-" : "") + std::to_string(l.var + 1);
}

enum class Value : std::uint8_t { Unset, True, False };

inline char to_char(Value v) {
  switch (v) {
    case Value::True: return 'T';
    case Value::False: return 'F';
    default: return '*';
  }
}

// Three-valued valuation. Variables beyond size() read as Unset.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t num_vars) : values_(num_vars, Value::Unset) {}

  std::size_t size() const { return values_.size(); }
  void resize(std::size_t n) { values_.resize(n, Value::Unset); }

  Value operator[](Var v) const { return v < values_.size() ? values_[v] : Value::Unset; }

  void set(Var v, Value x) {
    if (v >= values_.size()) values_.resize(v + 1, Value::Unset);
    values_[v] = x;
  }
  void assign(Lit l) { set(l.var, l.negative ? Value::False : Value::True); }

  bool is_true(Lit l) const {
    Value x = (*this)[l.var];
    return x == (l.negative ? Value::False : Value::True);
  }
  bool is_false(Lit l) const {
    Value x = (*this)[l.var];
    return x == (l.negative ? Value::True : Value::False);
  }
  bool is_unset(Var v) const { return (*this)[v] == Value::Unset; }

  friend bool operator==(const PartialAssignment& a, const PartialAssignment& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (Var v = 0; v < n; ++v)
      if (a[v] != b[v]) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (Value x : values_) s += to_char(x);
    return s;
  }

 private:
  std::vector<Value> values_;
};

enum class Role : std::uint8_t { Input, Auxiliary, Output };

// The CSP literal X_i = j an input variable stands for.
struct CspLiteral {
  int variable = 0;
  int value = 0;
  friend constexpr auto operator<=>(const CspLiteral&, const CspLiteral&) = default;
};

struct VarInfo {
  Role role = Role::Auxiliary;
  std::optional<CspLiteral> literal;  // inputs only
};

using Clause = std::vector<Lit>;

// Throws PreconditionError on an empty clause, a repeated literal or a
// complementary pair.
inline void check_clause(const Clause& c) {
  if (c.empty()) throw PreconditionError("empty clause");
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i] == c[j]) throw PreconditionError("duplicate literal " + to_string(c[i]));
      if (c[i].var == c[j].var)
        throw PreconditionError("tautological clause on variable " + std::to_string(c[i].var + 1));
    }
}

inline std::string to_string(const Clause& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ' ';
    s += to_string(c[i]);
  }
  return s + ")";
}

class ClauseSet {
 public:
  ClauseSet() = default;

  Var add_variable(Role role, std::optional<CspLiteral> literal = std::nullopt) {
    if (role == Role::Output && output_) throw PreconditionError("second output variable");
    if (role != Role::Input && literal) throw PreconditionError("only inputs carry a CSP literal");
    Var v = static_cast<Var>(vars_.size());
    vars_.push_back(VarInfo{role, literal});
    if (role == Role::Output) output_ = v;
    return v;
  }

  void add_clause(Clause c) {
    check_clause(c);
    for (Lit l : c)
      if (l.var >= vars_.size())
        throw StructuralError("clause uses undeclared variable " + std::to_string(l.var + 1));
    clauses_.push_back(std::move(c));
  }

  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }

  const VarInfo& info(Var v) const { return vars_.at(v); }
  Role role(Var v) const { return vars_.at(v).role; }
  std::optional<Var> output() const { return output_; }

  std::vector<Var> vars_with_role(Role r) const {
    std::vector<Var> out;
    for (Var v = 0; v < vars_.size(); ++v)
      if (vars_[v].role == r) out.push_back(v);
    return out;
  }
  std::vector<Var> inputs() const { return vars_with_role(Role::Input); }
  std::vector<Var> auxiliaries() const { return vars_with_role(Role::Auxiliary); }

  std::size_t num_literals() const {
    std::size_t n = 0;
    for (const auto& c : clauses_) n += c.size();
    return n;
  }

  friend bool operator==(const ClauseSet& a, const ClauseSet& b) {
    if (a.clauses_ != b.clauses_ || a.vars_.size() != b.vars_.size()) return false;
    for (std::size_t i = 0; i < a.vars_.size(); ++i)
      if (a.vars_[i].role != b.vars_[i].role || a.vars_[i].literal != b.vars_[i].literal)
        return false;
    return true;
  }

 private:
  std::vector<VarInfo> vars_;
  std::vector<Clause> clauses_;
  std::optional<Var> output_;
};

struct TrailEntry {
  Lit literal;
  std::size_t clause;
  friend bool operator==(const TrailEntry&, const TrailEntry&) = default;
};

struct PropagationResult {
  PartialAssignment final;
  bool conflict = false;
  std::optional<std::size_t> conflict_clause;
  std::vector<TrailEntry> trail;
};

// Result of breadth-first propagation: round[v] is 0 for variables assigned
// on entry, k > 0 for variables first forced in round k, -1 when unset.
struct RoundResult {
  PartialAssignment final;
  bool conflict = false;
  int conflict_round = -1;
  int rounds = 0;
  std::vector<int> round;
};

// Unit propagation over a fixed clause set. Occurrence lists are built once;
// propagate() is const and may be called concurrently.
class UnitPropagator {
 public:
  explicit UnitPropagator(const ClauseSet& f) : f_(&f), occurs_(2 * f.num_vars()) {
    for (std::size_t c = 0; c < f.num_clauses(); ++c)
      for (Lit l : f.clause(c)) occurs_[index(l)].push_back(c);
  }

  const ClauseSet& formula() const { return *f_; }

  // Pending clauses are served FIFO; clauses that become unit by the same
  // assignment are enqueued in ascending index order.
  PropagationResult propagate(const PartialAssignment& a) const {
    const ClauseSet& f = *f_;
    PropagationResult r;
    r.final = normalized(a);
    PartialAssignment& val = r.final;

    const std::size_t m = f.num_clauses();
    std::vector<std::uint32_t> n_false(m, 0), n_true(m, 0);
    std::vector<char> queued(m, 0);
    std::deque<std::size_t> queue;

    for (std::size_t c = 0; c < m; ++c) {
      for (Lit l : f.clause(c)) {
        if (val.is_true(l)) ++n_true[c];
        else if (val.is_false(l)) ++n_false[c];
      }
      if (n_true[c] == 0 && n_false[c] + 1 >= f.clause(c).size()) {
        queued[c] = 1;
        queue.push_back(c);
      }
    }

    while (!queue.empty()) {
      std::size_t c = queue.front();
      queue.pop_front();
      queued[c] = 0;
      if (n_true[c] > 0) continue;
      const Clause& cl = f.clause(c);
      if (n_false[c] == cl.size()) {
        r.conflict = true;
        r.conflict_clause = c;
        return r;
      }
      Lit unit{};
      for (Lit l : cl)
        if (val.is_unset(l.var)) {
          unit = l;
          break;
        }
      val.assign(unit);
      r.trail.push_back({unit, c});
      for (std::size_t d : occurs_[index(unit)]) ++n_true[d];
      for (std::size_t d : occurs_[index(~unit)]) {
        ++n_false[d];
        if (!queued[d] && n_true[d] == 0 && n_false[d] + 1 >= f.clause(d).size()) {
          queued[d] = 1;
          queue.push_back(d);
        }
      }
    }
    return r;
  }

  // Each round applies every clause that is unit (or falsified) under the
  // assignment left by the previous round, all at once.
  RoundResult propagate_rounds(const PartialAssignment& a, int max_rounds = -1) const {
    const ClauseSet& f = *f_;
    RoundResult r;
    r.final = normalized(a);
    r.round.assign(f.num_vars(), -1);
    for (Var v = 0; v < f.num_vars(); ++v)
      if (!r.final.is_unset(v)) r.round[v] = 0;

    for (int k = 1; max_rounds < 0 || k <= max_rounds; ++k) {
      std::vector<Lit> forced;
      for (const Clause& c : f.clauses()) {
        std::size_t unset = 0;
        bool sat = false;
        Lit last{};
        for (Lit l : c) {
          if (r.final.is_true(l)) {
            sat = true;
            break;
          }
          if (r.final.is_unset(l.var)) {
            ++unset;
            last = l;
          }
        }
        if (sat || unset > 1) continue;
        if (unset == 0) {
          r.conflict = true;
          r.conflict_round = k;
          return r;
        }
        forced.push_back(last);
      }
      if (forced.empty()) break;
      r.rounds = k;
      for (Lit l : forced) {
        if (r.final.is_false(l)) {
          r.conflict = true;
          r.conflict_round = k;
          return r;
        }
        if (r.final.is_unset(l.var)) {
          r.final.assign(l);
          r.round[l.var] = k;
        }
      }
    }
    return r;
  }

 private:
  static std::size_t index(Lit l) { return 2 * static_cast<std::size_t>(l.var) + l.negative; }

  PartialAssignment normalized(const PartialAssignment& a) const {
    const std::size_t n = f_->num_vars();
    for (Var v = static_cast<Var>(n); v < a.size(); ++v)
      if (!a.is_unset(v))
        throw PreconditionError("assignment sets undeclared variable " + std::to_string(v + 1));
    PartialAssignment out = a;
    out.resize(n);
    return out;
  }

  const ClauseSet* f_;
  std::vector<std::vector<std::size_t>> occurs_;
};

inline PropagationResult unit_propagate(const ClauseSet& f, const PartialAssignment& a) {
  return UnitPropagator(f).propagate(a);
}

inline RoundResult propagate_breadth_first(const ClauseSet& f, const PartialAssignment& a,
                                           int max_rounds = -1) {
  return UnitPropagator(f).propagate_rounds(a, max_rounds);
}

// Probes l: true iff propagating a with l set TRUE produces the empty clause.
inline bool failed_literal_test(const ClauseSet& f, const PartialAssignment& a, Lit l) {
  if (l.var >= f.num_vars()) throw StructuralError("probe on undeclared variable");
  if (!a.is_unset(l.var))
    throw PreconditionError("probe literal " + to_string(l) + " is already assigned");
  PartialAssignment probe = a;
  probe.assign(l);
  return unit_propagate(f, probe).conflict;
}

// Splits every clause longer than three literals into a chain
// (l1 l2 s1) (-s1 l3 s2) ... (-s_k l_{n-1} l_n). Fresh variables are
// auxiliaries appended after the existing ones.
inline ClauseSet convert_3cnf(const ClauseSet& f) {
  ClauseSet out;
  for (Var v = 0; v < f.num_vars(); ++v) out.add_variable(f.info(v).role, f.info(v).literal);
  for (const Clause& c : f.clauses()) {
    if (c.size() <= 3) {
      out.add_clause(c);
      continue;
    }
    Var s = out.add_variable(Role::Auxiliary);
    out.add_clause({c[0], c[1], Lit::pos(s)});
    for (std::size_t i = 2; i + 2 < c.size(); ++i) {
      Var next = out.add_variable(Role::Auxiliary);
      out.add_clause({Lit::neg(s), c[i], Lit::pos(next)});
      s = next;
    }
    out.add_clause({Lit::neg(s), c[c.size() - 2], c[c.size() - 1]});
  }
  return out;
}

}  // namespace cnfdecomp
