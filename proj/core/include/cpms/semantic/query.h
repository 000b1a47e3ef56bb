// Copyright 2026 The cpms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CPMS_SEMANTIC_QUERY_H_
#define CPMS_SEMANTIC_QUERY_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cpms/semantic/graph.h"

namespace cpms::semantic {

enum class Comparator { kGe, kGt, kLe, kLt, kEq, kNe };

std::string_view ComparatorSymbol(Comparator op);

// `path` holds one or more predicates chained with '/'. A single-element
// path may be a variable.
struct TriplePattern {
  Term subject;
  std::vector<Term> path;
  Term object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

// variable <op> numeric literal
struct Filter {
  Term variable;
  Comparator op = Comparator::kEq;
  Term value;

  friend bool operator==(const Filter&, const Filter&) = default;
};

struct Query {
  std::vector<Term> select_vars;
  std::vector<TriplePattern> patterns;
  std::vector<Filter> filters;
  PrefixMap prefixes;
};

// SELECT [DISTINCT] ?v... | * WHERE { triples with ';' ',' and '/' paths,
// FILTER(?v op number [&& ...]) }. Throws SyntaxError, UnknownPrefix,
// UnboundVariableInFilter, BadQuery.
Query ParseQuery(std::string_view text);

// Variable name -> bound term, restricted to the select variables.
using Binding = std::map<std::string, Term>;

// Basic graph pattern join. Paths p1/p2 traverse an intermediate node.
// Numeric filters compare xsd:integer/decimal/double values as doubles; a
// solution whose filter variable is not numeric is dropped. Results are
// deduplicated and sorted by the select variables' term strings.
std::vector<Binding> Evaluate(const Graph& graph, const Query& query);

struct NamedSolution {
  Term context;
  Binding binding;

  friend bool operator==(const NamedSolution&, const NamedSolution&) = default;
};

// Evaluates within each context separately; a solution never joins triples
// from two contexts. Sorted by context, then binding.
std::vector<NamedSolution> EvaluateNamed(const Dataset& dataset, const Query& query);

}  // namespace cpms::semantic

#endif  // CPMS_SEMANTIC_QUERY_H_
