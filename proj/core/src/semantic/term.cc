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

#include "cpms/semantic/term.h"

#include <cctype>

#include "cpms/common/error.h"
#include "cpms/common/strings.h"
#include "lexer.h"

namespace cpms::semantic {

namespace vocab {
std::string Rdf(std::string_view local) { return std::string(kRdf) + std::string(local); }
std::string Rdfs(std::string_view local) { return std::string(kRdfs) + std::string(local); }
std::string Xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }
std::string Lps(std::string_view local) { return std::string(kLps) + std::string(local); }
std::string Dbpedia(std::string_view local) {
  return std::string(kDbpedia) + std::string(local);
}
}  // namespace vocab

const PrefixMap& WellKnownPrefixes() {
  static const PrefixMap prefixes = {
      {"rdf", std::string(vocab::kRdf)},         {"rdfs", std::string(vocab::kRdfs)},
      {"xsd", std::string(vocab::kXsd)},         {"owl", std::string(vocab::kOwl)},
      {"dbpedia", std::string(vocab::kDbpedia)}, {"lps", std::string(vocab::kLps)},
  };
  return prefixes;
}

Term Term::Iri(std::string iri) { return Term{Kind::kIri, std::move(iri), {}, {}}; }

Term Term::Literal(std::string lexical, std::string datatype) {
  if (datatype.empty()) datatype = vocab::Xsd("string");
  return Term{Kind::kLiteral, std::move(lexical), std::move(datatype), {}};
}

Term Term::LangLiteral(std::string lexical, std::string language) {
  for (auto& c : language) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return Term{Kind::kLiteral, std::move(lexical), {}, std::move(language)};
}

Term Term::Blank(std::string label) { return Term{Kind::kBlank, std::move(label), {}, {}}; }

Term Term::Variable(std::string name) {
  return Term{Kind::kVariable, std::move(name), {}, {}};
}

Term Term::Integer(long long value) {
  return Literal(std::to_string(value), vocab::Xsd("integer"));
}

Term Term::Double(double value) { return Literal(FormatNumber(value), vocab::Xsd("double")); }

std::optional<double> Term::NumericValue() const {
  if (kind != Kind::kLiteral) return std::nullopt;
  if (datatype != vocab::Xsd("integer") && datatype != vocab::Xsd("double") &&
      datatype != vocab::Xsd("decimal")) {
    return std::nullopt;
  }
  return ParseDouble(value);
}

std::string EscapeString(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string Term::ToString() const {
  switch (kind) {
    case Kind::kIri:
      return "<" + value + ">";
    case Kind::kBlank:
      return "_:" + value;
    case Kind::kVariable:
      return "?" + value;
    case Kind::kLiteral: {
      std::string out = "\"" + EscapeString(value) + "\"";
      if (!language.empty()) return out + "@" + language;
      if (datatype != vocab::Xsd("string")) out += "^^<" + datatype + ">";
      return out;
    }
  }
  return {};
}

namespace {

bool IsSafeLocalName(std::string_view local) {
  for (char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

}  // namespace

std::string CompactIri(const std::string& iri, const PrefixMap& prefixes) {
  const std::string* best_prefix = nullptr;
  size_t best_length = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (ns.size() > best_length && iri.size() >= ns.size() && iri.compare(0, ns.size(), ns) == 0 &&
        IsSafeLocalName(std::string_view(iri).substr(ns.size()))) {
      best_prefix = &prefix;
      best_length = ns.size();
    }
  }
  if (!best_prefix) return "<" + iri + ">";
  return *best_prefix + ":" + iri.substr(best_length);
}

std::string CompactTerm(const Term& term, const PrefixMap& prefixes) {
  if (term.is_iri()) return CompactIri(term.value, prefixes);
  if (term.is_literal() && term.language.empty() && term.datatype != vocab::Xsd("string")) {
    return "\"" + EscapeString(term.value) + "\"^^" + CompactIri(term.datatype, prefixes);
  }
  return term.ToString();
}

Term ParseTerm(std::string_view text, const PrefixMap& prefixes) {
  detail::Lexer lexer(text);
  detail::TermReader reader(lexer, prefixes, /*allow_variables=*/true);
  Term term = reader.ReadTerm();
  if (lexer.Peek().kind != detail::TokenKind::kEnd) {
    lexer.Fail("trailing input after term");
  }
  return term;
}

}  // namespace cpms::semantic
