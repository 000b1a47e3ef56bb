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

#include "cpms/semantic/graph.h"

#include "cpms/common/error.h"

namespace cpms::semantic {

bool Graph::Insert(Triple triple) {
  if (!triple.subject.is_iri() && !triple.subject.is_blank()) {
    throw Error(ErrorCode::kInvalidTerm, "subject must be an IRI or blank node: " +
                                             triple.subject.ToString());
  }
  if (!triple.predicate.is_iri()) {
    throw Error(ErrorCode::kInvalidTerm,
                "predicate must be an IRI: " + triple.predicate.ToString());
  }
  if (triple.object.is_variable()) {
    throw Error(ErrorCode::kInvalidTerm, "variables cannot be stored");
  }
  return triples_.insert(std::move(triple)).second;
}

std::vector<Triple> Graph::Match(const std::optional<Term>& subject,
                                 const std::optional<Term>& predicate,
                                 const std::optional<Term>& object) const {
  std::vector<Triple> out;
  auto matches = [&](const Triple& t) {
    return (!predicate || t.predicate == *predicate) && (!object || t.object == *object);
  };
  if (subject) {
    // Triples are ordered subject-first, so the subject's run is contiguous.
    Triple lower{*subject, Term{Term::Kind::kIri, {}, {}, {}}, Term{Term::Kind::kIri, {}, {}, {}}};
    for (auto it = triples_.lower_bound(lower); it != triples_.end() && it->subject == *subject;
         ++it) {
      if (matches(*it)) out.push_back(*it);
    }
    return out;
  }
  for (const auto& t : triples_) {
    if (matches(t)) out.push_back(t);
  }
  return out;
}

void Dataset::Add(const Term& context, const Graph& graph) {
  Graph& target = graphs_[context];
  for (const auto& t : graph) target.Insert(t);
  for (const auto& [prefix, ns] : graph.prefixes()) target.SetPrefix(prefix, ns);
}

size_t Dataset::size() const {
  size_t n = 0;
  for (const auto& [context, graph] : graphs_) n += graph.size();
  return n;
}

std::vector<Quad> Dataset::quads() const {
  std::vector<Quad> out;
  for (const auto& [context, graph] : graphs_) {
    for (const auto& t : graph) out.push_back(Quad{context, t});
  }
  return out;
}

Dataset MergeNamed(const std::vector<std::pair<Term, Graph>>& graphs) {
  Dataset dataset;
  for (const auto& [context, graph] : graphs) dataset.Add(context, graph);
  return dataset;
}

}  // namespace cpms::semantic
