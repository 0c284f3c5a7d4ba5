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

// Boolean circuits over AND/OR/NOT: evaluation, monotonicity checks and the
// Tseitin encoding.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnfdecomp/cnf.hpp"
#include "cnfdecomp/csp_model.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

enum class GateKind : std::uint8_t { Input, And, Or, Not };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::Input: return "INPUT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
  }
  return "?";
}

struct CircuitNode {
  int id = 0;  // external label
  GateKind kind = GateKind::Input;
  std::vector<std::size_t> fanin;  // node indices, all smaller than this node's
  friend bool operator==(const CircuitNode&, const CircuitNode&) = default;
};

// One bit per input gate, in input order.
using CircuitInput = std::vector<bool>;

// A DAG whose nodes are stored in topological order. AND/OR with no fan-in are
// the constants 1 and 0.
class Circuit {
 public:
  std::size_t add_input(int id) {
    claim(id);
    nodes_.push_back({id, GateKind::Input, {}});
    inputs_.push_back(nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  std::size_t add_gate(int id, GateKind kind, std::vector<std::size_t> fanin) {
    if (kind == GateKind::Input) throw PreconditionError("use add_input for inputs");
    if (kind == GateKind::Not && fanin.size() != 1)
      throw StructuralError("NOT gate " + std::to_string(id) + " needs exactly one input");
    for (std::size_t f : fanin)
      if (f >= nodes_.size())
        throw StructuralError("gate " + std::to_string(id) + " reads a later or unknown node");
    claim(id);
    nodes_.push_back({id, kind, std::move(fanin)});
    return nodes_.size() - 1;
  }

  void set_output(std::size_t node) {
    if (node >= nodes_.size()) throw StructuralError("output node does not exist");
    output_ = node;
  }

  const std::vector<CircuitNode>& nodes() const { return nodes_; }
  const CircuitNode& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<std::size_t>& inputs() const { return inputs_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_gates() const { return nodes_.size() - inputs_.size(); }
  std::size_t output() const {
    if (!output_) throw StructuralError("circuit has no output");
    return *output_;
  }
  bool has_output() const { return output_.has_value(); }

  std::optional<std::size_t> find(int id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.nodes_ == b.nodes_ && a.inputs_ == b.inputs_ && a.output_ == b.output_;
  }

 private:
  void claim(int id) {
    if (!by_id_.emplace(id, nodes_.size()).second)
      throw StructuralError("duplicate node id " + std::to_string(id));
  }

  std::vector<CircuitNode> nodes_;
  std::vector<std::size_t> inputs_;
  std::optional<std::size_t> output_;
  std::map<int, std::size_t> by_id_;
};

// Values of every node under b.
inline std::vector<bool> evaluate_all(const Circuit& s, const CircuitInput& b) {
  if (b.size() != s.num_inputs())
    throw StructuralError("circuit has " + std::to_string(s.num_inputs()) + " inputs, got " +
                          std::to_string(b.size()) + " values");
  std::vector<bool> val(s.nodes().size(), false);
  std::size_t next_input = 0;
  for (std::size_t i = 0; i < s.nodes().size(); ++i) {
    const CircuitNode& n = s.node(i);
    switch (n.kind) {
      case GateKind::Input: val[i] = b[next_input++]; break;
      case GateKind::And: {
        bool v = true;
        for (std::size_t f : n.fanin) v = v && val[f];
        val[i] = v;
        break;
      }
      case GateKind::Or: {
        bool v = false;
        for (std::size_t f : n.fanin) v = v || val[f];
        val[i] = v;
        break;
      }
      case GateKind::Not: val[i] = !val[n.fanin[0]]; break;
    }
  }
  return val;
}

inline bool evaluate(const Circuit& s, const CircuitInput& b) { return evaluate_all(s, b)[s.output()]; }

inline bool is_structurally_monotone(const Circuit& s) {
  return std::none_of(s.nodes().begin(), s.nodes().end(),
                      [](const CircuitNode& n) { return n.kind == GateKind::Not; });
}

inline constexpr std::size_t kDefaultMonotoneInputBudget = 20;

inline CircuitInput bits_of(std::uint64_t word, std::size_t n) {
  CircuitInput b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (word >> i) & 1;
  return b;
}

// Exhaustive: no single 0 -> 1 input flip may decrease the output.
inline bool is_semantically_monotone(const Circuit& s,
                                     std::size_t max_inputs = kDefaultMonotoneInputBudget) {
  const std::size_t n = s.num_inputs();
  if (n > max_inputs) throw BudgetExceeded(n, max_inputs);
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<bool> out(total);
  for (std::uint64_t w = 0; w < total; ++w) out[w] = evaluate(s, bits_of(w, n));
  for (std::uint64_t w = 0; w < total; ++w)
    for (std::size_t i = 0; i < n; ++i)
      if (!((w >> i) & 1) && out[w] && !out[w | (std::uint64_t{1} << i)]) return false;
  return true;
}

struct TseitinEncoding {
  ClauseSet formula;
  // Literal standing for each node; a folded NOT maps to its negated fan-in.
  std::vector<Lit> node_literal;
};

// Circuit inputs become variables 0..n-1 in input order, followed by one
// variable per gate in topological order; gates with fan-in above two are
// split into left-deep chains whose intermediate variables precede the gate's.
// NOT gates are folded into the literals of their readers, except a NOT at the
// output which is reified as (x g) (-x -g).
inline TseitinEncoding tseitin_encode_detailed(const Circuit& s) {
  TseitinEncoding enc;
  ClauseSet& f = enc.formula;
  const std::size_t out = s.output();
  std::vector<Lit> lit(s.nodes().size());

  for (std::size_t idx : s.inputs()) lit[idx] = Lit::pos(f.add_variable(Role::Input));

  auto emit_binary = [&f](GateKind kind, Lit a, Lit b, Lit g) {
    if (kind == GateKind::And) {
      f.add_clause({a, ~g});
      f.add_clause({b, ~g});
      f.add_clause({~a, ~b, g});
    } else {
      f.add_clause({~a, g});
      f.add_clause({~b, g});
      f.add_clause({a, b, ~g});
    }
  };

  for (std::size_t i = 0; i < s.nodes().size(); ++i) {
    const CircuitNode& n = s.node(i);
    if (n.kind == GateKind::Input) continue;
    const Role role = i == out ? Role::Output : Role::Auxiliary;

    if (n.kind == GateKind::Not) {
      Lit x = lit[n.fanin[0]];
      if (i != out) {
        lit[i] = ~x;
        continue;
      }
      Lit g = Lit::pos(f.add_variable(role));
      f.add_clause({x, g});
      f.add_clause({~x, ~g});
      lit[i] = g;
      continue;
    }

    std::vector<Lit> in;
    bool complementary = false;
    for (std::size_t fi : n.fanin) {
      Lit l = lit[fi];
      if (std::find(in.begin(), in.end(), l) != in.end()) continue;
      if (std::find(in.begin(), in.end(), ~l) != in.end()) complementary = true;
      in.push_back(l);
    }

    if (complementary) {
      // x AND -x is 0, x OR -x is 1
      Lit g = Lit::pos(f.add_variable(role));
      f.add_clause({n.kind == GateKind::And ? ~g : g});
      lit[i] = g;
      continue;
    }
    if (in.empty()) {
      Lit g = Lit::pos(f.add_variable(role));
      f.add_clause({n.kind == GateKind::And ? g : ~g});
      lit[i] = g;
      continue;
    }
    if (in.size() == 1) {
      Lit g = Lit::pos(f.add_variable(role));
      f.add_clause({~in[0], g});
      f.add_clause({in[0], ~g});
      lit[i] = g;
      continue;
    }
    Lit acc = in[0];
    for (std::size_t k = 1; k + 1 < in.size(); ++k) {
      Lit t = Lit::pos(f.add_variable(Role::Auxiliary));
      emit_binary(n.kind, acc, in[k], t);
      acc = t;
    }
    Lit g = Lit::pos(f.add_variable(role));
    emit_binary(n.kind, acc, in.back(), g);
    lit[i] = g;
  }

  if (s.node(out).kind == GateKind::Input) {
    Lit x = lit[out];
    Lit g = Lit::pos(f.add_variable(Role::Output));
    f.add_clause({~x, g});
    f.add_clause({x, ~g});
    lit[out] = g;
  }
  enc.node_literal = std::move(lit);
  return enc;
}

inline ClauseSet tseitin_encode(const Circuit& s) { return tseitin_encode_detailed(s).formula; }

// D^b(X): b_{i,j} = 1 iff j is still in D(X_i), in (i, j) order.
inline CircuitInput build_circuit_input(const DomainState& state, const DirectEncodingMap& map) {
  check_state_matches(state, map);
  CircuitInput b;
  for (std::size_t i = 0; i < state.num_vars(); ++i)
    for (int j = 0; j < state.domain_size(static_cast<int>(i)); ++j)
      b.push_back(state.contains(static_cast<int>(i), j));
  return b;
}

// Circuit input read off a partial assignment over the given input variables:
// 0 iff FALSE, 1 for TRUE or unset.
inline CircuitInput circuit_input_from(const PartialAssignment& a, const std::vector<Var>& inputs) {
  CircuitInput b;
  for (Var v : inputs) b.push_back(a[v] != Value::False);
  return b;
}

}  // namespace cnfdecomp
