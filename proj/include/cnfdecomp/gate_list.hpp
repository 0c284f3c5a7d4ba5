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

// Gate-list text format:
//   input <id>
//   gate <id> AND|OR|NOT <fanin ids...>
//   output <id>
// Fan-ins must be declared before use. '#' starts a comment.

#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnfdecomp/circuit.hpp"
#include "cnfdecomp/dimacs.hpp"
#include "cnfdecomp/errors.hpp"

namespace cnfdecomp {

inline Circuit read_gate_list(std::istream& in) {
  Circuit s;
  std::optional<std::size_t> output;
  std::string line;
  std::size_t lineno = 0;
  auto id_of = [&](const std::string& tok) { return static_cast<int>(detail::parse_long(tok, lineno)); };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (output) throw ParseError(lineno, "content after the output line");
    try {
      if (toks[0] == "input") {
        if (toks.size() != 2) throw ParseError(lineno, "expected 'input <id>'");
        s.add_input(id_of(toks[1]));
      } else if (toks[0] == "gate") {
        if (toks.size() < 3) throw ParseError(lineno, "expected 'gate <id> AND|OR|NOT <fanins>'");
        GateKind kind;
        if (toks[2] == "AND") kind = GateKind::And;
        else if (toks[2] == "OR") kind = GateKind::Or;
        else if (toks[2] == "NOT") kind = GateKind::Not;
        else throw ParseError(lineno, "unknown gate kind '" + toks[2] + "'");
        std::vector<std::size_t> fanin;
        for (std::size_t i = 3; i < toks.size(); ++i) {
          auto node = s.find(id_of(toks[i]));
          if (!node) throw ParseError(lineno, "fan-in " + toks[i] + " is not declared before this gate");
          fanin.push_back(*node);
        }
        s.add_gate(id_of(toks[1]), kind, std::move(fanin));
      } else if (toks[0] == "output") {
        if (toks.size() != 2) throw ParseError(lineno, "expected 'output <id>'");
        auto node = s.find(id_of(toks[1]));
        if (!node) throw ParseError(lineno, "output " + toks[1] + " is not declared");
        output = *node;
        s.set_output(*node);
      } else {
        throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!output) throw ParseError(lineno, "missing output line");
  return s;
}

inline Circuit read_gate_list_string(const std::string& text) {
  std::istringstream in(text);
  return read_gate_list(in);
}

inline void write_gate_list(std::ostream& out, const Circuit& s) {
  for (const CircuitNode& n : s.nodes()) {
    if (n.kind == GateKind::Input) {
      out << "input " << n.id << '\n';
      continue;
    }
    out << "gate " << n.id << ' ' << to_string(n.kind);
    for (std::size_t f : n.fanin) out << ' ' << s.node(f).id;
    out << '\n';
  }
  out << "output " << s.node(s.output()).id << '\n';
}

inline std::string to_gate_list(const Circuit& s) {
  std::ostringstream os;
  write_gate_list(os, s);
  return os.str();
}

}  // namespace cnfdecomp
