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

#include "lexer.h"

#include <cctype>

namespace cpms::semantic::detail {
namespace {

bool IsNameStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool IsLocalChar(char c) { return IsNameChar(c) || c == ':' || c == '%'; }

void AppendUtf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

bool Token::IsKeyword(std::string_view keyword) const {
  if (kind != TokenKind::kWord || text.size() != keyword.size()) return false;
  for (size_t i = 0; i < text.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text[i])) !=
        std::toupper(static_cast<unsigned char>(keyword[i]))) {
      return false;
    }
  }
  return true;
}

void Lexer::Fail(const std::string& message) { FailAt(Peek(), message); }

void Lexer::FailAt(const Token& token, const std::string& message) {
  throw SyntaxError(message, token.line, token.column);
}

void Lexer::Advance(size_t n) {
  for (size_t i = 0; i < n && pos_ < text_.size(); ++i) {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
}

void Lexer::SkipSpaceAndComments() {
  while (pos_ < text_.size()) {
    char c = Cur();
    if (std::isspace(static_cast<unsigned char>(c))) {
      Advance();
    } else if (c == '#') {
      while (pos_ < text_.size() && Cur() != '\n') Advance();
    } else {
      break;
    }
  }
}

const Token& Lexer::Peek() {
  if (!has_peek_) {
    peek_ = Scan();
    has_peek_ = true;
  }
  return peek_;
}

Token Lexer::Next() {
  Peek();
  has_peek_ = false;
  return std::move(peek_);
}

bool Lexer::ConsumePunct(std::string_view p) {
  if (Peek().IsPunct(p)) {
    Next();
    return true;
  }
  return false;
}

void Lexer::ExpectPunct(std::string_view p) {
  if (!ConsumePunct(p)) {
    const Token& t = Peek();
    FailAt(t, "expected '" + std::string(p) + "'" +
                  (t.kind == TokenKind::kEnd ? " before end of input"
                                             : " near '" + t.text + "'"));
  }
}

bool Lexer::LooksLikeIri() const {
  for (size_t i = pos_ + 1; i < text_.size(); ++i) {
    char c = text_[i];
    if (c == '>') return true;
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '<') {
      return false;
    }
  }
  return false;
}

std::string Lexer::ScanString(char quote, bool long_form) {
  Token start{TokenKind::kString, {}, line_, column_};
  Advance(long_form ? 3 : 1);
  std::string out;
  while (true) {
    if (pos_ >= text_.size()) FailAt(start, "unterminated string");
    char c = Cur();
    if (long_form) {
      if (c == quote && At(1) == quote && At(2) == quote) {
        Advance(3);
        return out;
      }
    } else if (c == quote) {
      Advance();
      return out;
    } else if (c == '\n' || c == '\r') {
      FailAt(start, "newline in string");
    }
    if (c == '\\') {
      char e = At(1);
      Advance(2);
      switch (e) {
        case 't': out.push_back('\t'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        case 'u':
        case 'U': {
          size_t digits = e == 'u' ? 4 : 8;
          uint32_t cp = 0;
          for (size_t i = 0; i < digits; ++i) {
            char h = Cur();
            if (!std::isxdigit(static_cast<unsigned char>(h))) FailAt(start, "bad unicode escape");
            cp = cp * 16 + static_cast<uint32_t>(std::isdigit(static_cast<unsigned char>(h))
                                                     ? h - '0'
                                                     : std::tolower(h) - 'a' + 10);
            Advance();
          }
          AppendUtf8(out, cp);
          break;
        }
        default:
          FailAt(start, std::string("bad escape \\") + e);
      }
      continue;
    }
    out.push_back(c);
    Advance();
  }
}

Token Lexer::Scan() {
  SkipSpaceAndComments();
  Token tok;
  tok.line = line_;
  tok.column = column_;
  if (pos_ >= text_.size()) return tok;

  const char c = Cur();
  auto single = [&](TokenKind kind, size_t n) {
    tok.kind = kind;
    tok.text = std::string(text_.substr(pos_, n));
    Advance(n);
    return tok;
  };

  if (c == '<') {
    if (LooksLikeIri()) {
      Advance();
      while (Cur() != '>') {
        tok.text.push_back(Cur());
        Advance();
      }
      Advance();
      tok.kind = TokenKind::kIriRef;
      return tok;
    }
    return single(TokenKind::kOp, At(1) == '=' ? 2 : 1);
  }
  if (c == '>') return single(TokenKind::kOp, At(1) == '=' ? 2 : 1);
  if (c == '=') return single(TokenKind::kOp, 1);
  if (c == '!' && At(1) == '=') return single(TokenKind::kOp, 2);
  if (c == '&' && At(1) == '&') return single(TokenKind::kOp, 2);
  if (c == '|' && At(1) == '|') return single(TokenKind::kOp, 2);
  if (c == '^' && At(1) == '^') return single(TokenKind::kPunct, 2);

  if (c == '"' || c == '\'') {
    bool long_form = At(1) == c && At(2) == c;
    tok.text = ScanString(c, long_form);
    tok.kind = TokenKind::kString;
    return tok;
  }

  if (c == '@') {
    Advance();
    std::string word;
    while (std::isalnum(static_cast<unsigned char>(Cur())) || Cur() == '-') {
      word.push_back(Cur());
      Advance();
    }
    if (word.empty()) FailAt(tok, "stray '@'");
    tok.kind = (word == "prefix" || word == "base") ? TokenKind::kDirective : TokenKind::kLangTag;
    tok.text = word;
    return tok;
  }

  if ((c == '?' || c == '$') && IsNameStart(At(1))) {
    Advance();
    while (std::isalnum(static_cast<unsigned char>(Cur())) || Cur() == '_') {
      tok.text.push_back(Cur());
      Advance();
    }
    tok.kind = TokenKind::kVariable;
    return tok;
  }

  if (c == '_' && At(1) == ':') {
    Advance(2);
    while (IsNameChar(Cur())) {
      tok.text.push_back(Cur());
      Advance();
    }
    while (!tok.text.empty() && tok.text.back() == '.') {
      // Trailing dot terminates the statement.
      tok.text.pop_back();
      --pos_;
      --column_;
    }
    if (tok.text.empty()) FailAt(tok, "empty blank node label");
    tok.kind = TokenKind::kBlank;
    return tok;
  }

  if (std::isdigit(static_cast<unsigned char>(c)) ||
      ((c == '+' || c == '-') && (std::isdigit(static_cast<unsigned char>(At(1))) ||
                                  (At(1) == '.' && std::isdigit(static_cast<unsigned char>(At(2)))))) ||
      (c == '.' && std::isdigit(static_cast<unsigned char>(At(1))))) {
    tok.kind = TokenKind::kInteger;
    if (c == '+' || c == '-') {
      tok.text.push_back(c);
      Advance();
    }
    while (std::isdigit(static_cast<unsigned char>(Cur()))) {
      tok.text.push_back(Cur());
      Advance();
    }
    if (Cur() == '.' && std::isdigit(static_cast<unsigned char>(At(1)))) {
      tok.kind = TokenKind::kDecimal;
      tok.text.push_back('.');
      Advance();
      while (std::isdigit(static_cast<unsigned char>(Cur()))) {
        tok.text.push_back(Cur());
        Advance();
      }
    }
    if ((Cur() == 'e' || Cur() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(At(1))) ||
         ((At(1) == '+' || At(1) == '-') && std::isdigit(static_cast<unsigned char>(At(2)))))) {
      tok.kind = TokenKind::kDouble;
      tok.text.push_back(Cur());
      Advance();
      if (Cur() == '+' || Cur() == '-') {
        tok.text.push_back(Cur());
        Advance();
      }
      while (std::isdigit(static_cast<unsigned char>(Cur()))) {
        tok.text.push_back(Cur());
        Advance();
      }
    }
    return tok;
  }

  if (IsNameStart(c) || c == ':') {
    std::string prefix;
    while (IsNameChar(Cur())) {
      prefix.push_back(Cur());
      Advance();
    }
    if (Cur() == ':') {
      Advance();
      std::string local;
      while (IsLocalChar(Cur())) {
        local.push_back(Cur());
        Advance();
      }
      while (!local.empty() && local.back() == '.') {
        local.pop_back();
        --pos_;
        --column_;
      }
      tok.kind = TokenKind::kPName;
      tok.text = prefix + ":" + local;
      return tok;
    }
    while (!prefix.empty() && prefix.back() == '.') {
      prefix.pop_back();
      --pos_;
      --column_;
    }
    tok.kind = TokenKind::kWord;
    tok.text = prefix;
    return tok;
  }

  static constexpr std::string_view kPunct = ".;,{}()[]/*";
  if (kPunct.find(c) != std::string_view::npos) return single(TokenKind::kPunct, 1);

  FailAt(tok, std::string("unexpected character '") + c + "'");
}

std::string TermReader::ExpandPName(const Token& token) {
  auto colon = token.text.find(':');
  std::string prefix = token.text.substr(0, colon);
  std::string local = token.text.substr(colon + 1);
  if (auto it = prefixes_.find(prefix); it != prefixes_.end()) return it->second + local;
  const auto& known = WellKnownPrefixes();
  if (auto it = known.find(prefix); it != known.end()) {
    implicit_[prefix] = it->second;
    return it->second + local;
  }
  throw Error(ErrorCode::kUnknownPrefix, "undeclared prefix '" + prefix + ":' at " +
                                             std::to_string(token.line) + ":" +
                                             std::to_string(token.column));
}

Term TermReader::ReadIri() {
  Token tok = lexer_.Next();
  switch (tok.kind) {
    case TokenKind::kIriRef:
      return Term::Iri(tok.text);
    case TokenKind::kPName:
      return Term::Iri(ExpandPName(tok));
    case TokenKind::kWord:
      if (tok.text == "a") return Term::Iri(vocab::Rdf("type"));
      [[fallthrough]];
    default:
      lexer_.FailAt(tok, "expected IRI, got '" + tok.text + "'");
  }
}

Term TermReader::ReadTerm() {
  const Token& peek = lexer_.Peek();
  switch (peek.kind) {
    case TokenKind::kIriRef:
    case TokenKind::kPName:
      return ReadIri();
    case TokenKind::kBlank:
      return Term::Blank(lexer_.Next().text);
    case TokenKind::kVariable: {
      Token tok = lexer_.Next();
      if (!allow_variables_) lexer_.FailAt(tok, "variable outside a query");
      return Term::Variable(tok.text);
    }
    case TokenKind::kInteger:
      return Term::Literal(lexer_.Next().text, vocab::Xsd("integer"));
    case TokenKind::kDecimal:
      return Term::Literal(lexer_.Next().text, vocab::Xsd("decimal"));
    case TokenKind::kDouble:
      return Term::Literal(lexer_.Next().text, vocab::Xsd("double"));
    case TokenKind::kString: {
      std::string lexical = lexer_.Next().text;
      if (lexer_.Peek().kind == TokenKind::kLangTag) {
        return Term::LangLiteral(std::move(lexical), lexer_.Next().text);
      }
      if (lexer_.ConsumePunct("^^")) {
        Term datatype = ReadIri();
        return Term::Literal(std::move(lexical), datatype.value);
      }
      return Term::Literal(std::move(lexical));
    }
    case TokenKind::kWord:
      if (peek.text == "true" || peek.text == "false") {
        return Term::Literal(lexer_.Next().text, vocab::Xsd("boolean"));
      }
      if (peek.text == "a") return ReadIri();
      [[fallthrough]];
    default: {
      Token tok = lexer_.Next();
      lexer_.FailAt(tok, tok.kind == TokenKind::kEnd ? "expected term before end of input"
                                                     : "expected term, got '" + tok.text + "'");
    }
  }
}

}  // namespace cpms::semantic::detail
