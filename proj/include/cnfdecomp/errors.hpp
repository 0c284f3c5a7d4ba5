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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnfdecomp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value refers to something that does not exist: an unmapped variable,
// a missing circuit input, an undeclared propositional variable.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t required_log2, std::size_t budget_log2)
      : Error("enumeration needs 2^" + std::to_string(required_log2) +
              " states, budget is 2^" + std::to_string(budget_log2)),
        required_log2_(required_log2),
        budget_log2_(budget_log2) {}

  std::size_t required_log2() const { return required_log2_; }
  std::size_t budget_log2() const { return budget_log2_; }

 private:
  std::size_t required_log2_;
  std::size_t budget_log2_;
};

// A transform declined its input (non-monotone circuit, formula not in the
// required normal form, degenerate table).
class Refusal : public Error {
 public:
  using Error::Error;
};

// The exactly-one-negative normalization found a clause that proves the input
// is not a checker decomposition.
class NormalizationFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cnfdecomp
