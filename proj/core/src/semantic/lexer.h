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

#ifndef CPMS_SEMANTIC_LEXER_H_
#define CPMS_SEMANTIC_LEXER_H_

// Tokenizer shared by the Turtle and query parsers.

#include <string>
#include <string_view>

#include "cpms/common/error.h"
#include "cpms/semantic/term.h"

namespace cpms::semantic::detail {

enum class TokenKind {
  kEnd,
  kIriRef,     // text = IRI without brackets
  kPName,      // text = "pfx:local" (local may be empty)
  kBlank,      // text = label
  kVariable,   // text = name
  kString,     // text = unescaped value
  kLangTag,    // text = tag without '@'
  kDirective,  // text = "prefix" | "base" (from @prefix / @base)
  kInteger,
  kDecimal,
  kDouble,
  kWord,   // bare word: a, true, SELECT, ...
  kPunct,  // . ; , { } ( ) [ ] / * ^^
  kOp,     // >= <= > < = != && ||
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;

  bool Is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool IsPunct(std::string_view t) const { return Is(TokenKind::kPunct, t); }
  // Case-insensitive keyword match.
  bool IsKeyword(std::string_view keyword) const;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& Peek();
  Token Next();
  bool ConsumePunct(std::string_view p);
  void ExpectPunct(std::string_view p);

  [[noreturn]] void Fail(const std::string& message);
  [[noreturn]] void FailAt(const Token& token, const std::string& message);

 private:
  Token Scan();
  void SkipSpaceAndComments();
  char Cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char At(size_t offset) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  void Advance(size_t n = 1);
  std::string ScanString(char quote, bool long_form);
  bool LooksLikeIri() const;

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool has_peek_ = false;
  Token peek_;
};

// Reads single RDF terms from a token stream.
class TermReader {
 public:
  TermReader(Lexer& lexer, const PrefixMap& prefixes, bool allow_variables)
      : lexer_(lexer), prefixes_(prefixes), allow_variables_(allow_variables) {}

  Term ReadTerm();
  Term ReadIri();  // IRIREF, prefixed name or 'a'
  std::string ExpandPName(const Token& token);

  // Well-known prefixes that were resolved without a declaration.
  const PrefixMap& implicit_prefixes() const { return implicit_; }

 private:
  Lexer& lexer_;
  const PrefixMap& prefixes_;
  bool allow_variables_;
  PrefixMap implicit_;
};

}  // namespace cpms::semantic::detail

#endif  // CPMS_SEMANTIC_LEXER_H_
