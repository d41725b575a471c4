#pragma once

// Shared hand-rolled lexer for the formula, evidence-term, and proof-file
// grammars. Internal to the library sources.

#include <cctype>
#include <string>
#include <string_view>

#include "e2p/formula.hpp"

namespace e2p {

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { skip_ws(); }

  size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek_raw() const { return at_end() ? '\0' : text_[pos_]; }

  void expect_end() {
    if (!at_end()) throw ParseError("trailing input", pos_);
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '$';
  }

  bool peek_ident(std::string_view kw) const {
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return false;
    size_t e = pos_;
    while (e < text_.size() && ident_char(text_[e])) e++;
    return text_.substr(pos_, e - pos_) == kw;
  }

  std::string ident() {
    if (at_end() || !ident_start(text_[pos_])) throw ParseError("expected identifier", pos_);
    size_t s = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) pos_++;
    std::string r(text_.substr(s, pos_ - s));
    skip_ws();
    return r;
  }

  // Symbols are matched literally; longest caller-supplied token wins by
  // calling try_sym with the longer token first.
  bool try_sym(std::string_view sym) {
    if (text_.substr(pos_, sym.size()) != sym) return false;
    pos_ += sym.size();
    skip_ws();
    return true;
  }

  void expect(std::string_view sym) {
    if (!try_sym(sym)) throw ParseError("expected '" + std::string(sym) + "'", pos_);
  }

  // Double-quoted string with no escapes (used for cut formulas in proof files).
  std::string quoted() {
    if (at_end() || text_[pos_] != '"') throw ParseError("expected '\"'", pos_);
    size_t s = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') pos_++;
    if (at_end()) throw ParseError("unterminated string", s);
    std::string r(text_.substr(s, pos_ - s));
    pos_++;
    skip_ws();
    return r;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) pos_++;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace e2p
