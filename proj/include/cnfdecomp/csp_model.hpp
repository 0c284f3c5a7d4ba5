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

// CSP variables and domains, extensional constraints and the direct
// encoding that links domains to propositional state.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cnfdecomp/cnf.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

inline constexpr int kMaxDomainSize = 64;
inline constexpr std::size_t kDefaultStateBudgetLog2 = 24;

struct CspVariable {
  int id = 0;
  int domain_size = 1;
};

inline std::vector<CspVariable> make_variables(const std::vector<int>& domain_sizes) {
  std::vector<CspVariable> vars;
  for (std::size_t i = 0; i < domain_sizes.size(); ++i) {
    if (domain_sizes[i] < 1 || domain_sizes[i] > kMaxDomainSize)
      throw PreconditionError("domain size must lie in 1.." + std::to_string(kMaxDomainSize));
    vars.push_back({static_cast<int>(i), domain_sizes[i]});
  }
  return vars;
}

// Current domains D(X), one bitmask of still-possible values per variable.
// A state with an empty value set is a wipeout.
class DomainState {
 public:
  using Mask = std::uint64_t;

  DomainState() = default;

  static Mask full_mask(int d) { return d >= 64 ? ~Mask{0} : (Mask{1} << d) - 1; }

  static DomainState full(const std::vector<int>& sizes) {
    DomainState s;
    s.sizes_ = sizes;
    for (int d : sizes) s.masks_.push_back(full_mask(d));
    return s;
  }
  static DomainState full(const std::vector<CspVariable>& vars) {
    std::vector<int> sizes;
    for (const auto& v : vars) sizes.push_back(v.domain_size);
    return full(sizes);
  }
  static DomainState wipeout(const std::vector<int>& sizes) {
    DomainState s = full(sizes);
    for (auto& m : s.masks_) m = 0;
    return s;
  }
  static DomainState from_masks(std::vector<int> sizes, std::vector<Mask> masks) {
    if (sizes.size() != masks.size()) throw PreconditionError("mask count mismatch");
    for (std::size_t i = 0; i < sizes.size(); ++i)
      if ((masks[i] & ~full_mask(sizes[i])) != 0)
        throw PreconditionError("value outside the initial domain of X" + std::to_string(i));
    DomainState s;
    s.sizes_ = std::move(sizes);
    s.masks_ = std::move(masks);
    return s;
  }

  std::size_t num_vars() const { return sizes_.size(); }
  int domain_size(int var) const { return sizes_.at(var); }
  const std::vector<int>& domain_sizes() const { return sizes_; }
  Mask mask(int var) const { return masks_.at(var); }

  bool contains(int var, int value) const {
    return value >= 0 && value < sizes_.at(var) && ((masks_[var] >> value) & 1);
  }
  int size(int var) const { return std::popcount(masks_.at(var)); }

  std::vector<int> values(int var) const {
    std::vector<int> out;
    for (int j = 0; j < sizes_.at(var); ++j)
      if (contains(var, j)) out.push_back(j);
    return out;
  }

  void erase(int var, int value) { masks_.at(var) &= ~(Mask{1} << value); }

  // D(X)|_{X_i=j}
  DomainState restricted(int var, int value) const {
    DomainState s = *this;
    s.masks_.at(var) &= (Mask{1} << value);
    return s;
  }

  bool is_wipeout() const {
    for (Mask m : masks_)
      if (m == 0) return true;
    return false;
  }

  // Literal-set inclusion; every wipeout is the empty literal set.
  bool subset_of(const DomainState& other) const {
    if (is_wipeout()) return true;
    if (other.is_wipeout()) return false;
    for (std::size_t i = 0; i < masks_.size(); ++i)
      if ((masks_[i] & ~other.masks_[i]) != 0) return false;
    return true;
  }

  // Wipeouts compare equal regardless of which variable emptied.
  friend bool operator==(const DomainState& a, const DomainState& b) {
    if (a.sizes_ != b.sizes_) return false;
    if (a.is_wipeout() || b.is_wipeout()) return a.is_wipeout() && b.is_wipeout();
    return a.masks_ == b.masks_;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if (i) s += ' ';
      s += '{';
      bool first = true;
      for (int j : values(static_cast<int>(i))) {
        if (!first) s += ',';
        s += std::to_string(j);
        first = false;
      }
      s += '}';
    }
    return s;
  }

 private:
  std::vector<int> sizes_;
  std::vector<Mask> masks_;
};

// Consistency checker: 0 (false) only when no assignment within the domains
// can be a solution.
using CheckerFunction = std::function<bool(const DomainState&)>;

// Domain narrowing function; a wipeout result signals dis-entailment.
using PropagatorFunction = std::function<DomainState(const DomainState&)>;

// Constraint given by its solution tuples over an ordered scope.
class ExtensionalConstraint {
 public:
  using Tuple = std::vector<int>;

  ExtensionalConstraint(std::vector<CspVariable> scope, std::vector<Tuple> tuples)
      : scope_(std::move(scope)), tuples_(std::move(tuples)) {
    std::set<Tuple> seen;
    for (const auto& t : tuples_) {
      if (t.size() != scope_.size()) throw PreconditionError("tuple arity differs from scope");
      for (std::size_t p = 0; p < t.size(); ++p)
        if (t[p] < 0 || t[p] >= scope_[p].domain_size)
          throw PreconditionError("tuple value outside the initial domain");
      if (!seen.insert(t).second) throw PreconditionError("duplicate tuple");
    }
  }

  const std::vector<CspVariable>& scope() const { return scope_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t arity() const { return scope_.size(); }

  std::vector<int> domain_sizes() const {
    std::vector<int> out;
    for (const auto& v : scope_) out.push_back(v.domain_size);
    return out;
  }

 private:
  std::vector<CspVariable> scope_;
  std::vector<Tuple> tuples_;
};

// Bijection between CSP literals X_i = j and propositional variables x_{i,j}.
class DirectEncodingMap {
 public:
  DirectEncodingMap() = default;

  // Variables numbered densely in (i, j) order, starting at `first`.
  explicit DirectEncodingMap(const std::vector<int>& domain_sizes, Var first = 0) {
    make_variables(domain_sizes);
    Var next = first;
    for (std::size_t i = 0; i < domain_sizes.size(); ++i) {
      ids_.emplace_back();
      for (int j = 0; j < domain_sizes[i]; ++j) {
        ids_.back().push_back(next);
        reverse_[next] = {static_cast<int>(i), j};
        ++next;
      }
    }
  }

  // Rebuilds the map from the input annotations of a formula. Values of each
  // CSP variable must be dense from 0.
  static DirectEncodingMap from_formula(const ClauseSet& f) {
    std::map<int, std::map<int, Var>> by_var;
    for (Var v : f.inputs()) {
      const auto& lit = f.info(v).literal;
      if (!lit) throw StructuralError("input variable " + std::to_string(v + 1) + " has no CSP literal");
      if (!by_var[lit->variable].emplace(lit->value, v).second)
        throw StructuralError("CSP literal mapped twice");
    }
    DirectEncodingMap m;
    int expected = 0;
    for (const auto& [i, values] : by_var) {
      if (i != expected++) throw StructuralError("CSP variable ids are not dense");
      m.ids_.emplace_back();
      int j = 0;
      for (const auto& [value, v] : values) {
        if (value != j++) throw StructuralError("values of X" + std::to_string(i) + " are not dense");
        m.ids_.back().push_back(v);
        m.reverse_[v] = {i, value};
      }
      if (values.size() > static_cast<std::size_t>(kMaxDomainSize))
        throw StructuralError("domain too large");
    }
    return m;
  }

  std::size_t num_csp_vars() const { return ids_.size(); }
  int domain_size(int i) const { return static_cast<int>(ids_.at(i).size()); }
  std::vector<int> domain_sizes() const {
    std::vector<int> out;
    for (const auto& row : ids_) out.push_back(static_cast<int>(row.size()));
    return out;
  }
  std::vector<CspVariable> variables() const { return make_variables(domain_sizes()); }
  std::size_t num_literals() const { return reverse_.size(); }

  Var var(int i, int j) const {
    if (i < 0 || static_cast<std::size_t>(i) >= ids_.size() || j < 0 ||
        static_cast<std::size_t>(j) >= ids_[i].size())
      throw StructuralError("unmapped CSP literal X" + std::to_string(i) + "=" + std::to_string(j));
    return ids_[i][j];
  }
  std::optional<CspLiteral> literal(Var v) const {
    auto it = reverse_.find(v);
    if (it == reverse_.end()) return std::nullopt;
    return it->second;
  }

  // Propositional variables in (i, j) order.
  std::vector<Var> propositional_vars() const {
    std::vector<Var> out;
    for (const auto& row : ids_) out.insert(out.end(), row.begin(), row.end());
    return out;
  }

  Var max_var() const {
    Var m = 0;
    for (const auto& [v, _] : reverse_) m = std::max(m, v);
    return m;
  }

  // (-x_{i,j} -x_{i,k}) for j < k.
  std::vector<Clause> at_most_one_clauses() const {
    std::vector<Clause> out;
    for (const auto& row : ids_)
      for (std::size_t j = 0; j < row.size(); ++j)
        for (std::size_t k = j + 1; k < row.size(); ++k)
          out.push_back({Lit::neg(row[j]), Lit::neg(row[k])});
    return out;
  }
  // (x_{i,0} ... x_{i,d-1}) per variable.
  std::vector<Clause> at_least_one_clauses() const {
    std::vector<Clause> out;
    for (const auto& row : ids_) {
      Clause c;
      for (Var v : row) c.push_back(Lit::pos(v));
      out.push_back(std::move(c));
    }
    return out;
  }

  friend bool operator==(const DirectEncodingMap& a, const DirectEncodingMap& b) {
    return a.ids_ == b.ids_;
  }

 private:
  std::vector<std::vector<Var>> ids_;
  std::map<Var, CspLiteral> reverse_;
};

inline void check_state_matches(const DomainState& state, const DirectEncodingMap& map) {
  if (state.num_vars() != map.num_csp_vars())
    throw StructuralError("domain state has " + std::to_string(state.num_vars()) +
                          " variables, encoding maps " + std::to_string(map.num_csp_vars()));
  for (std::size_t i = 0; i < state.num_vars(); ++i)
    if (state.domain_size(static_cast<int>(i)) != map.domain_size(static_cast<int>(i)))
      throw StructuralError("domain size of X" + std::to_string(i) + " differs from the encoding");
}

// x_{i,j} FALSE iff j is pruned, TRUE iff D(X_i) = {j}, otherwise unset.
inline PartialAssignment encode_domain(const DomainState& state, const DirectEncodingMap& map) {
  check_state_matches(state, map);
  PartialAssignment a(map.num_literals() == 0 ? 0 : map.max_var() + 1);
  for (std::size_t i = 0; i < state.num_vars(); ++i) {
    const int vi = static_cast<int>(i);
    const bool singleton = state.size(vi) == 1;
    for (int j = 0; j < state.domain_size(vi); ++j) {
      Var x = map.var(vi, j);
      if (!state.contains(vi, j)) a.set(x, Value::False);
      else if (singleton) a.set(x, Value::True);
    }
  }
  return a;
}

// Same domain, represented by its FALSE literals only.
inline PartialAssignment encode_domain_false_only(const DomainState& state,
                                                  const DirectEncodingMap& map) {
  check_state_matches(state, map);
  PartialAssignment a(map.num_literals() == 0 ? 0 : map.max_var() + 1);
  for (std::size_t i = 0; i < state.num_vars(); ++i)
    for (int j = 0; j < state.domain_size(static_cast<int>(i)); ++j)
      if (!state.contains(static_cast<int>(i), j))
        a.set(map.var(static_cast<int>(i), j), Value::False);
  return a;
}

// j in D(X_i) iff x_{i,j} is not FALSE.
inline DomainState decode_assignment(const PartialAssignment& a, const DirectEncodingMap& map) {
  DomainState s = DomainState::full(map.domain_sizes());
  for (std::size_t i = 0; i < map.num_csp_vars(); ++i)
    for (int j = 0; j < map.domain_size(static_cast<int>(i)); ++j)
      if (a[map.var(static_cast<int>(i), j)] == Value::False) s.erase(static_cast<int>(i), j);
  return s;
}

// Every combination of nonempty per-variable value sets, first variable most
// significant, each mask ascending. Refuses when sum of domain sizes exceeds
// the log2 budget.
class DomainStateRange {
 public:
  DomainStateRange(const std::vector<CspVariable>& vars,
                   std::size_t budget_log2 = kDefaultStateBudgetLog2) {
    std::size_t need = 0;
    for (const auto& v : vars) {
      if (v.domain_size < 1 || v.domain_size > kMaxDomainSize)
        throw PreconditionError("domain size out of range");
      sizes_.push_back(v.domain_size);
      need += static_cast<std::size_t>(v.domain_size);
    }
    if (need > budget_log2) throw BudgetExceeded(need, budget_log2);
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = DomainState;
    using difference_type = std::ptrdiff_t;
    using pointer = const DomainState*;
    using reference = const DomainState&;

    iterator() = default;
    explicit iterator(const std::vector<int>& sizes) : done_(false) {
      std::vector<DomainState::Mask> masks(sizes.size(), 1);
      state_ = DomainState::from_masks(sizes, masks);
      masks_ = std::move(masks);
    }

    reference operator*() const { return state_; }
    pointer operator->() const { return &state_; }

    iterator& operator++() {
      const auto& sizes = state_.domain_sizes();
      std::size_t i = masks_.size();
      while (i > 0) {
        --i;
        if (masks_[i] < DomainState::full_mask(sizes[i])) {
          ++masks_[i];
          state_ = DomainState::from_masks(sizes, masks_);
          return *this;
        }
        masks_[i] = 1;
      }
      done_ = true;
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ && b.done_; }

   private:
    bool done_ = true;
    DomainState state_;
    std::vector<DomainState::Mask> masks_;
  };

  iterator begin() const { return iterator(sizes_); }
  iterator end() const { return iterator(); }

  // prod(2^d_i - 1)
  std::size_t count() const {
    std::size_t n = 1;
    for (int d : sizes_) n *= static_cast<std::size_t>(DomainState::full_mask(d));
    return n;
  }

 private:
  std::vector<int> sizes_;
};

inline DomainStateRange enumerate_domain_states(const std::vector<CspVariable>& vars,
                                                std::size_t budget_log2 = kDefaultStateBudgetLog2) {
  return DomainStateRange(vars, budget_log2);
}

}  // namespace cnfdecomp
