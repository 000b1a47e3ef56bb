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

#include "cpms/semantic/query.h"

#include <algorithm>
#include <set>

#include "lexer.h"

namespace cpms::semantic {
namespace {

using detail::Lexer;
using detail::TermReader;
using detail::Token;
using detail::TokenKind;

Comparator Flip(Comparator op) {
  switch (op) {
    case Comparator::kGe: return Comparator::kLe;
    case Comparator::kGt: return Comparator::kLt;
    case Comparator::kLe: return Comparator::kGe;
    case Comparator::kLt: return Comparator::kGt;
    default: return op;
  }
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text)
      : lexer_(text), reader_(lexer_, query_.prefixes, /*allow_variables=*/true) {}

  Query Parse() {
    while (lexer_.Peek().IsKeyword("PREFIX") || lexer_.Peek().Is(TokenKind::kDirective, "prefix")) {
      bool at_form = lexer_.Next().kind == TokenKind::kDirective;
      auto name = lexer_.Next();
      if (name.kind != TokenKind::kPName || name.text.back() != ':') {
        lexer_.FailAt(name, "expected prefix name like 'ex:'");
      }
      auto iri = lexer_.Next();
      if (iri.kind != TokenKind::kIriRef) lexer_.FailAt(iri, "expected <iri>");
      query_.prefixes[name.text.substr(0, name.text.size() - 1)] = iri.text;
      if (at_form) lexer_.ExpectPunct(".");
    }

    auto select = lexer_.Next();
    if (!select.IsKeyword("SELECT")) lexer_.FailAt(select, "expected SELECT");
    if (lexer_.Peek().IsKeyword("DISTINCT")) lexer_.Next();
    bool select_all = false;
    if (lexer_.ConsumePunct("*")) {
      select_all = true;
    } else {
      while (lexer_.Peek().kind == TokenKind::kVariable) {
        query_.select_vars.push_back(Term::Variable(lexer_.Next().text));
      }
      if (query_.select_vars.empty()) lexer_.Fail("expected at least one variable after SELECT");
    }
    if (lexer_.Peek().IsKeyword("WHERE")) lexer_.Next();
    lexer_.ExpectPunct("{");
    Group();
    lexer_.ExpectPunct("}");
    if (lexer_.Peek().kind != TokenKind::kEnd) lexer_.Fail("unexpected input after '}'");

    std::vector<std::string> seen;
    auto note = [&](const Term& t) {
      if (t.is_variable() && std::find(seen.begin(), seen.end(), t.value) == seen.end()) {
        seen.push_back(t.value);
      }
    };
    for (const auto& p : query_.patterns) {
      note(p.subject);
      for (const auto& step : p.path) note(step);
      note(p.object);
    }
    if (select_all) {
      for (const auto& name : seen) query_.select_vars.push_back(Term::Variable(name));
    }
    for (const auto& v : query_.select_vars) {
      if (std::find(seen.begin(), seen.end(), v.value) == seen.end()) {
        throw Error(ErrorCode::kBadQuery, "select variable ?" + v.value + " not used in WHERE");
      }
    }
    for (const auto& f : query_.filters) {
      if (std::find(seen.begin(), seen.end(), f.variable.value) == seen.end()) {
        throw Error(ErrorCode::kUnboundVariableInFilter,
                    "?" + f.variable.value + " does not appear in any pattern");
      }
    }
    return std::move(query_);
  }

 private:
  void Group() {
    while (true) {
      const Token& tok = lexer_.Peek();
      if (tok.IsPunct("}") || tok.kind == TokenKind::kEnd) return;
      if (tok.IsPunct(".")) {
        lexer_.Next();
        continue;
      }
      if (tok.IsKeyword("FILTER")) {
        FilterClause();
        continue;
      }
      TriplesBlock();
    }
  }

  void TriplesBlock() {
    Term subject = reader_.ReadTerm();
    if (subject.is_literal()) lexer_.Fail("literal in subject position");
    while (true) {
      std::vector<Term> path = Path();
      do {
        Term object = reader_.ReadTerm();
        query_.patterns.push_back(TriplePattern{subject, path, std::move(object)});
      } while (lexer_.ConsumePunct(","));
      // A FILTER may sit between the last object and the '.'.
      while (lexer_.Peek().IsKeyword("FILTER")) FilterClause();
      if (!lexer_.ConsumePunct(";")) break;
      while (lexer_.ConsumePunct(";")) {
      }
      const Token& next = lexer_.Peek();
      if (next.IsPunct(".") || next.IsPunct("}")) break;
    }
    const Token& end = lexer_.Peek();
    if (end.IsPunct(".")) {
      lexer_.Next();
    } else if (!end.IsPunct("}") && !end.IsKeyword("FILTER")) {
      lexer_.Fail("expected '.', ';' or '}' after triple pattern, got '" + end.text + "'");
    }
  }

  std::vector<Term> Path() {
    std::vector<Term> path;
    if (lexer_.Peek().kind == TokenKind::kVariable) {
      path.push_back(Term::Variable(lexer_.Next().text));
      return path;
    }
    path.push_back(reader_.ReadIri());
    while (lexer_.ConsumePunct("/")) path.push_back(reader_.ReadIri());
    return path;
  }

  void FilterClause() {
    lexer_.Next();  // FILTER
    lexer_.ExpectPunct("(");
    Conjunction();
    lexer_.ExpectPunct(")");
  }

  void Conjunction() {
    while (true) {
      if (lexer_.ConsumePunct("(")) {
        Conjunction();
        lexer_.ExpectPunct(")");
      } else {
        Comparison();
      }
      const Token& next = lexer_.Peek();
      if (next.Is(TokenKind::kOp, "&&")) {
        lexer_.Next();
        continue;
      }
      if (next.Is(TokenKind::kOp, "||")) lexer_.Fail("'||' is not supported in FILTER");
      return;
    }
  }

  void Comparison() {
    Term left = reader_.ReadTerm();
    Token op_token = lexer_.Next();
    if (op_token.kind != TokenKind::kOp || op_token.text == "&&" || op_token.text == "||") {
      lexer_.FailAt(op_token, "expected comparison operator");
    }
    Comparator op;
    if (op_token.text == ">=") op = Comparator::kGe;
    else if (op_token.text == ">") op = Comparator::kGt;
    else if (op_token.text == "<=") op = Comparator::kLe;
    else if (op_token.text == "<") op = Comparator::kLt;
    else if (op_token.text == "=") op = Comparator::kEq;
    else op = Comparator::kNe;
    Term right = reader_.ReadTerm();

    if (!left.is_variable() && right.is_variable()) {
      std::swap(left, right);
      op = Flip(op);
    }
    if (!left.is_variable()) lexer_.FailAt(op_token, "FILTER comparison needs a variable");
    if (!right.NumericValue()) lexer_.FailAt(op_token, "FILTER compares against a numeric literal");
    query_.filters.push_back(Filter{std::move(left), op, std::move(right)});
  }

  Query query_;
  Lexer lexer_;
  TermReader reader_;
};

bool Compare(double lhs, Comparator op, double rhs) {
  switch (op) {
    case Comparator::kGe: return lhs >= rhs;
    case Comparator::kGt: return lhs > rhs;
    case Comparator::kLe: return lhs <= rhs;
    case Comparator::kLt: return lhs < rhs;
    case Comparator::kEq: return lhs == rhs;
    case Comparator::kNe: return lhs != rhs;
  }
  return false;
}

using Solution = std::map<std::string, Term>;

class Evaluator {
 public:
  Evaluator(const Graph& graph, const Query& query) : graph_(graph), query_(query) {}

  std::vector<Binding> Run() {
    std::vector<bool> done(query_.patterns.size(), false);
    Solution solution;
    Solve(done, 0, solution);
    std::vector<Binding> out;
    out.reserve(results_.size());
    for (auto& [key, binding] : results_) out.push_back(std::move(binding));
    return out;
  }

 private:
  static std::optional<Term> Resolve(const Term& t, const Solution& s) {
    if (!t.is_variable()) return t;
    if (auto it = s.find(t.value); it != s.end()) return it->second;
    return std::nullopt;
  }

  static int BoundCount(const TriplePattern& p, const Solution& s) {
    return (Resolve(p.subject, s) ? 2 : 0) + (Resolve(p.object, s) ? 1 : 0);
  }

  // (start, end) pairs connected by the path; `predicate` reported for a
  // single variable predicate.
  struct Edge {
    Term start, predicate, end;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  std::set<Edge> Walk(const std::optional<Term>& subject, const std::vector<Term>& path,
                      const std::optional<Term>& object, const Solution& s) const {
    std::set<Edge> edges;
    if (path.size() == 1) {
      auto predicate = Resolve(path[0], s);
      for (auto& t : graph_.Match(subject, predicate, object)) {
        edges.insert(Edge{t.subject, t.predicate, t.object});
      }
      return edges;
    }
    std::set<Term> starts;
    if (subject) {
      starts.insert(*subject);
    } else {
      for (auto& t : graph_.Match(std::nullopt, path[0], std::nullopt)) starts.insert(t.subject);
    }
    for (const auto& start : starts) {
      std::set<Term> frontier{start};
      for (const auto& predicate : path) {
        std::set<Term> next;
        for (const auto& node : frontier) {
          if (!node.is_iri() && !node.is_blank()) continue;
          for (auto& t : graph_.Match(node, predicate, std::nullopt)) next.insert(t.object);
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
      }
      for (const auto& end : frontier) {
        if (!object || end == *object) edges.insert(Edge{start, Term{}, end});
      }
    }
    return edges;
  }

  // False when a filter whose variable is bound fails (or is non-numeric).
  bool FiltersHold(const Solution& s) const {
    for (const auto& f : query_.filters) {
      auto it = s.find(f.variable.value);
      if (it == s.end()) continue;
      auto lhs = it->second.NumericValue();
      if (!lhs) return false;
      if (!Compare(*lhs, f.op, *f.value.NumericValue())) return false;
    }
    return true;
  }

  static bool Bind(Solution& s, const Term& pattern, const Term& value) {
    if (!pattern.is_variable()) return true;
    auto [it, inserted] = s.emplace(pattern.value, value);
    return inserted || it->second == value;
  }

  void Solve(std::vector<bool>& done, size_t depth, Solution& s) {
    if (depth == query_.patterns.size()) {
      Binding binding;
      std::vector<std::string> key;
      for (const auto& v : query_.select_vars) {
        const Term& t = s.at(v.value);
        binding.emplace(v.value, t);
        key.push_back(t.ToString());
      }
      results_.emplace(std::move(key), std::move(binding));
      return;
    }
    // Most-constrained pattern first; ties keep textual order.
    size_t pick = 0;
    int best = -1;
    for (size_t i = 0; i < query_.patterns.size(); ++i) {
      if (done[i]) continue;
      int score = BoundCount(query_.patterns[i], s);
      if (score > best) {
        best = score;
        pick = i;
      }
    }
    const TriplePattern& p = query_.patterns[pick];
    done[pick] = true;
    for (const auto& edge : Walk(Resolve(p.subject, s), p.path, Resolve(p.object, s), s)) {
      Solution next = s;
      if (!Bind(next, p.subject, edge.start) || !Bind(next, p.object, edge.end)) continue;
      if (p.path.size() == 1 && !Bind(next, p.path[0], edge.predicate)) continue;
      if (!FiltersHold(next)) continue;
      Solve(done, depth + 1, next);
    }
    done[pick] = false;
  }

  const Graph& graph_;
  const Query& query_;
  std::map<std::vector<std::string>, Binding> results_;
};

}  // namespace

std::string_view ComparatorSymbol(Comparator op) {
  switch (op) {
    case Comparator::kGe: return ">=";
    case Comparator::kGt: return ">";
    case Comparator::kLe: return "<=";
    case Comparator::kLt: return "<";
    case Comparator::kEq: return "=";
    case Comparator::kNe: return "!=";
  }
  return "?";
}

Query ParseQuery(std::string_view text) { return QueryParser(text).Parse(); }

std::vector<Binding> Evaluate(const Graph& graph, const Query& query) {
  return Evaluator(graph, query).Run();
}

std::vector<NamedSolution> EvaluateNamed(const Dataset& dataset, const Query& query) {
  std::vector<NamedSolution> out;
  // graphs() is ordered by context term; order by the context string instead.
  std::vector<const std::pair<const Term, Graph>*> contexts;
  for (const auto& entry : dataset.graphs()) contexts.push_back(&entry);
  std::sort(contexts.begin(), contexts.end(), [](auto* a, auto* b) {
    return a->first.ToString() < b->first.ToString();
  });
  for (const auto* entry : contexts) {
    for (auto& binding : Evaluate(entry->second, query)) {
      out.push_back(NamedSolution{entry->first, std::move(binding)});
    }
  }
  return out;
}

}  // namespace cpms::semantic
