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

#ifndef CPMS_SEMANTIC_TURTLE_H_
#define CPMS_SEMANTIC_TURTLE_H_

#include <string>
#include <string_view>

#include "cpms/semantic/graph.h"

namespace cpms::semantic {

// Turtle/N3 subset: @prefix and PREFIX directives, <iri>, prefixed names,
// `a`, ';' and ',' lists, [ ... ] blank nodes, _:labels, plain / typed /
// language-tagged literals, numbers, booleans, '#' comments.
// Throws SyntaxError (with line/column) and UnknownPrefix.
Graph ParseTurtle(std::string_view text);

// Prefix block, blank line, then one triple per line sorted by
// subject, predicate, object. Deterministic.
std::string SerializeTurtle(const Graph& graph);

}  // namespace cpms::semantic

#endif  // CPMS_SEMANTIC_TURTLE_H_
