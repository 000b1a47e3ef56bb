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

#include "cpms/semantic/turtle.h"

#include <algorithm>

#include "lexer.h"

namespace cpms::semantic {
namespace {

using detail::Lexer;
using detail::TermReader;
using detail::TokenKind;

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text)
      : lexer_(text), reader_(lexer_, prefixes_, /*allow_variables=*/false) {}

  Graph Parse() {
    while (lexer_.Peek().kind != TokenKind::kEnd) Statement();
    for (const auto& [prefix, ns] : reader_.implicit_prefixes()) {
      if (!graph_.prefixes().contains(prefix)) graph_.SetPrefix(prefix, ns);
    }
    return std::move(graph_);
  }

 private:
  void Statement() {
    const auto& tok = lexer_.Peek();
    if (tok.kind == TokenKind::kDirective) {
      std::string name = lexer_.Next().text;
      if (name == "prefix") {
        PrefixDecl();
      } else {
        BaseDecl();
      }
      lexer_.ExpectPunct(".");
      return;
    }
    if (tok.IsKeyword("PREFIX")) {
      lexer_.Next();
      PrefixDecl();
      return;
    }
    if (tok.IsKeyword("BASE")) {
      lexer_.Next();
      BaseDecl();
      return;
    }
    Triples();
    lexer_.ExpectPunct(".");
  }

  void PrefixDecl() {
    auto name = lexer_.Next();
    if (name.kind != TokenKind::kPName || name.text.back() != ':') {
      lexer_.FailAt(name, "expected prefix name like 'ex:'");
    }
    auto iri = lexer_.Next();
    if (iri.kind != TokenKind::kIriRef) lexer_.FailAt(iri, "expected <iri> in prefix declaration");
    std::string prefix = name.text.substr(0, name.text.size() - 1);
    prefixes_[prefix] = iri.text;
    graph_.SetPrefix(prefix, iri.text);
  }

  void BaseDecl() {
    auto iri = lexer_.Next();
    if (iri.kind != TokenKind::kIriRef) lexer_.FailAt(iri, "expected <iri> in base declaration");
  }

  void Triples() {
    if (lexer_.Peek().IsPunct("[")) {
      Term subject = BlankNodePropertyList();
      if (!lexer_.Peek().IsPunct(".")) PredicateObjectList(subject);
      return;
    }
    Term subject = Subject();
    PredicateObjectList(subject);
  }

  Term Subject() {
    const auto& tok = lexer_.Peek();
    if (tok.kind == TokenKind::kIriRef || tok.kind == TokenKind::kPName) return reader_.ReadIri();
    if (tok.kind == TokenKind::kBlank) return Term::Blank(lexer_.Next().text);
    lexer_.FailAt(tok, "expected subject, got '" + tok.text + "'");
  }

  void PredicateObjectList(const Term& subject) {
    while (true) {
      Term predicate = reader_.ReadIri();
      ObjectList(subject, predicate);
      if (!lexer_.ConsumePunct(";")) return;
      while (lexer_.ConsumePunct(";")) {
      }
      const auto& next = lexer_.Peek();
      if (next.IsPunct(".") || next.IsPunct("]") || next.kind == TokenKind::kEnd) return;
    }
  }

  void ObjectList(const Term& subject, const Term& predicate) {
    do {
      Term object = lexer_.Peek().IsPunct("[") ? BlankNodePropertyList() : reader_.ReadTerm();
      graph_.Insert(subject, predicate, std::move(object));
    } while (lexer_.ConsumePunct(","));
  }

  Term BlankNodePropertyList() {
    lexer_.ExpectPunct("[");
    Term node = Term::Blank("genid" + std::to_string(next_blank_++));
    if (!lexer_.Peek().IsPunct("]")) PredicateObjectList(node);
    lexer_.ExpectPunct("]");
    return node;
  }

  Lexer lexer_;
  PrefixMap prefixes_;
  TermReader reader_;
  Graph graph_;
  int next_blank_ = 0;
};

}  // namespace

Graph ParseTurtle(std::string_view text) { return TurtleParser(text).Parse(); }

std::string SerializeTurtle(const Graph& graph) {
  std::string out;
  for (const auto& [prefix, ns] : graph.prefixes()) {
    out += "@prefix " + prefix + ": <" + ns + "> .\n";
  }
  if (graph.empty()) return out;
  if (!out.empty()) out.push_back('\n');

  struct Line {
    std::string s, p, o;
    const Triple* triple;
  };
  std::vector<Line> lines;
  lines.reserve(graph.size());
  for (const auto& t : graph) {
    lines.push_back({t.subject.ToString(), t.predicate.ToString(), t.object.ToString(), &t});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.s, a.p, a.o) < std::tie(b.s, b.p, b.o);
  });
  for (const auto& line : lines) {
    out += CompactTerm(line.triple->subject, graph.prefixes());
    out.push_back(' ');
    out += CompactTerm(line.triple->predicate, graph.prefixes());
    out.push_back(' ');
    out += CompactTerm(line.triple->object, graph.prefixes());
    out += " .\n";
  }
  return out;
}

}  // namespace cpms::semantic
