#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "opal/word.hpp"

namespace opal {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
};

namespace detail {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::string read_ident(Cursor& cur) {
  cur.skip_ws();
  std::size_t start = cur.pos;
  if (start >= cur.text.size() || !ident_start(cur.text[start]))
    throw ParseError("expected identifier", start);
  std::size_t end = start + 1;
  while (end < cur.text.size() && ident_char(cur.text[end])) ++end;
  cur.pos = end;
  return std::string(cur.text.substr(start, end - start));
}

// word := "1" | term+ ; term := IDENT | "[" word "]"
inline WordPtr parse_word_body(Cursor& cur, const Alphabet& alph, bool toplevel) {
  cur.skip_ws();
  if (cur.peek() == '1') {
    ++cur.pos;
    return word_identity();
  }
  std::vector<Factor> fs;
  for (;;) {
    char c = cur.peek();
    if (c == '[') {
      ++cur.pos;
      WordPtr inner = parse_word_body(cur, alph, false);
      cur.expect(']');
      fs.push_back(Factor{-1, std::move(inner)});
    } else if (ident_start(c)) {
      std::size_t at = cur.pos;
      std::string name = read_ident(cur);
      LetterId id = alph.id(name);
      if (id < 0) throw ParseError("unknown letter '" + name + "'", at);
      fs.push_back(Factor{id, nullptr});
    } else {
      break;
    }
  }
  if (fs.empty()) throw ParseError("expected word", cur.pos);
  (void)toplevel;
  return make_word(std::move(fs));
}

}  // namespace detail

inline WordPtr parse_word(std::string_view text, const Alphabet& alph) {
  detail::Cursor cur{text};
  WordPtr w = detail::parse_word_body(cur, alph, true);
  if (!cur.eof()) throw ParseError("trailing input", cur.pos);
  return w;
}

}  // namespace opal
