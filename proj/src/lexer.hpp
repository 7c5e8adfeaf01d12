#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "godelgen/error.hpp"

namespace godelgen {

enum class Tok {
  Ident,
  Directive,  // %abbrev, %name, ...
  Colon,
  Dot,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Arrow,
  BackArrow,
  Equals,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  std::size_t offset = 0;
};

enum class LexMode { Signature, Term };

std::string describe(const Token& t);

// LF-style lexer: identifiers are maximal runs of characters other than
// whitespace and `.:()[]{}%"`, so `natlist/+` and `a->b` are single
// identifiers while a free-standing `->` is the arrow.
class Lexer {
 public:
  Lexer(std::string_view text, LexMode mode, SourcePos origin = {1, 1});

  const Token& peek();
  Token next();

 private:
  void skip_space_and_comments();
  Token scan();
  char cur() const { return i_ < text_.size() ? text_[i_] : '\0'; }
  char at(std::size_t k) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }
  void advance();

  std::string_view text_;
  LexMode mode_;
  std::size_t i_ = 0;
  SourcePos pos_;
  Token la_;
  bool has_la_ = false;
};

}  // namespace godelgen
