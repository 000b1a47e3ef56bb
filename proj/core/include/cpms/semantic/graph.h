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

#ifndef CPMS_SEMANTIC_GRAPH_H_
#define CPMS_SEMANTIC_GRAPH_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpms/semantic/term.h"

namespace cpms::semantic {

struct Triple {
  Term subject;    // Iri or Blank
  Term predicate;  // Iri
  Term object;     // anything but Variable

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Set of triples plus the prefixes used to write them.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  // Returns false for a duplicate. Throws InvalidTerm on position violations.
  bool Insert(Triple triple);
  bool Insert(Term subject, Term predicate, Term object) {
    return Insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
  }
  bool Contains(const Triple& triple) const { return triples_.contains(triple); }

  // Unset positions are wildcards.
  std::vector<Triple> Match(const std::optional<Term>& subject,
                            const std::optional<Term>& predicate,
                            const std::optional<Term>& object) const;

  size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  const PrefixMap& prefixes() const { return prefixes_; }
  void SetPrefix(std::string prefix, std::string iri) {
    prefixes_[std::move(prefix)] = std::move(iri);
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }

 private:
  std::set<Triple> triples_;
  PrefixMap prefixes_;
};

struct Quad {
  Term context;
  Triple triple;

  friend auto operator<=>(const Quad&, const Quad&) = default;
};

// Union of per-context graphs; each triple keeps its owning context.
class Dataset {
 public:
  void Add(const Term& context, const Graph& graph);

  size_t size() const;
  std::vector<Quad> quads() const;
  const std::map<Term, Graph>& graphs() const { return graphs_; }

 private:
  std::map<Term, Graph> graphs_;
};

Dataset MergeNamed(const std::vector<std::pair<Term, Graph>>& graphs);

}  // namespace cpms::semantic

#endif  // CPMS_SEMANTIC_GRAPH_H_
