#include "lexer.hpp"

#include <cctype>

namespace godelgen {

namespace {

bool is_delim(char c) {
  switch (c) {
    case '.':
    case ':':
    case '(':
    case ')':
    case '[':
    case ']':
    case '{':
    case '}':
    case '%':
    case '"':
    case '\0':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

}  // namespace

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident:
      return "'" + t.text + "'";
    case Tok::Directive:
      return "directive " + t.text;
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

Lexer::Lexer(std::string_view text, LexMode mode, SourcePos origin)
    : text_(text), mode_(mode), pos_(origin) {}

void Lexer::advance() {
  if (cur() == '\n') {
    ++pos_.line;
    pos_.column = 1;
  } else {
    ++pos_.column;
  }
  ++i_;
}

void Lexer::skip_space_and_comments() {
  for (;;) {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(cur()))) advance();
    if (mode_ != LexMode::Signature || cur() != '%') return;
    const char n = at(1);
    if (n == '{') {
      const SourcePos start = pos_;
      advance();
      advance();
      while (i_ < text_.size() && !(cur() == '}' && at(1) == '%')) advance();
      if (i_ >= text_.size()) throw ParseError(start, "unterminated %{ comment");
      advance();
      advance();
      continue;
    }
    if (n == '%' || n == '\0' || std::isspace(static_cast<unsigned char>(n))) {
      while (i_ < text_.size() && cur() != '\n') advance();
      continue;
    }
    return;
  }
}

Token Lexer::scan() {
  skip_space_and_comments();
  Token t;
  t.pos = pos_;
  t.offset = i_;
  if (i_ >= text_.size()) {
    t.kind = Tok::End;
    return t;
  }
  const char c = cur();
  auto single = [&](Tok k) {
    t.kind = k;
    t.text = std::string(1, c);
    advance();
    return t;
  };
  switch (c) {
    case ':':
      return single(Tok::Colon);
    case '.':
      return single(Tok::Dot);
    case '(':
      return single(Tok::LParen);
    case ')':
      return single(Tok::RParen);
    case '[':
      return single(Tok::LBracket);
    case ']':
      return single(Tok::RBracket);
    case '{':
      return single(Tok::LBrace);
    case '}':
      return single(Tok::RBrace);
    case '"':
      throw ParseError(pos_, "string literals are not supported");
    default:
      break;
  }
  std::string word;
  if (c == '%') {
    word.push_back(c);
    advance();
  }
  while (!is_delim(cur())) {
    word.push_back(cur());
    advance();
  }
  if (word == "%") throw ParseError(t.pos, "stray '%'");
  t.text = word;
  if (word.front() == '%') {
    t.kind = Tok::Directive;
  } else if (word == "->") {
    t.kind = Tok::Arrow;
  } else if (word == "<-") {
    t.kind = Tok::BackArrow;
  } else if (word == "=") {
    t.kind = Tok::Equals;
  } else {
    t.kind = Tok::Ident;
  }
  return t;
}

const Token& Lexer::peek() {
  if (!has_la_) {
    la_ = scan();
    has_la_ = true;
  }
  return la_;
}

Token Lexer::next() {
  peek();
  has_la_ = false;
  return std::move(la_);
}

}  // namespace godelgen
