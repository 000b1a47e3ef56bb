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

#ifndef CPMS_SEMANTIC_TERM_H_
#define CPMS_SEMANTIC_TERM_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace cpms::semantic {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kDbpedia = "http://dbpedia.org/resource/";
inline constexpr std::string_view kLps = "http://ssegvml.ece.upatras.gr/LiqueurPlantSystem#";

std::string Rdf(std::string_view local);
std::string Rdfs(std::string_view local);
std::string Xsd(std::string_view local);
std::string Lps(std::string_view local);
std::string Dbpedia(std::string_view local);
}  // namespace vocab

using PrefixMap = std::map<std::string, std::string>;

// Prefixes resolvable without a declaration: rdf, rdfs, xsd, owl, dbpedia
// and the plant vocabulary lps. Document declarations override them.
const PrefixMap& WellKnownPrefixes();

struct Term {
  enum class Kind : uint8_t { kIri, kLiteral, kBlank, kVariable };

  Kind kind = Kind::kIri;
  std::string value;     // IRI, lexical form, blank label or variable name
  std::string datatype;  // literals without a language tag
  std::string language;  // language-tagged literals

  static Term Iri(std::string iri);
  // Plain literals get xsd:string.
  static Term Literal(std::string lexical, std::string datatype = {});
  static Term LangLiteral(std::string lexical, std::string language);
  static Term Blank(std::string label);
  static Term Variable(std::string name);
  static Term Integer(long long value);
  static Term Double(double value);

  bool is_iri() const { return kind == Kind::kIri; }
  bool is_literal() const { return kind == Kind::kLiteral; }
  bool is_blank() const { return kind == Kind::kBlank; }
  bool is_variable() const { return kind == Kind::kVariable; }

  // Value of xsd:integer, xsd:decimal and xsd:double literals.
  std::optional<double> NumericValue() const;

  // N-Triples form: <iri>, "lex"^^<dt>, "lex"@en, _:b, ?v. Plain xsd:string
  // literals print without the datatype.
  std::string ToString() const;

  friend auto operator<=>(const Term&, const Term&) = default;
};

std::string EscapeString(std::string_view text);

// "pfx:local" when an entry of `prefixes` is a prefix of the IRI and the
// remainder is a safe local name; N-Triples form otherwise.
std::string CompactIri(const std::string& iri, const PrefixMap& prefixes);
std::string CompactTerm(const Term& term, const PrefixMap& prefixes);

// Parses one term in N-Triples or Turtle shorthand (pfx:local resolved by
// `prefixes` then the well-known table, numbers, true/false).
Term ParseTerm(std::string_view text, const PrefixMap& prefixes = {});

}  // namespace cpms::semantic

#endif  // CPMS_SEMANTIC_TERM_H_
