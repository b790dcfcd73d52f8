#include "ctw/sexpr.hpp"

namespace ctw {

namespace {

struct Cursor {
  const std::string &text;
  const std::string &file;
  size_t pos = 0;
  uint32_t line = 1;
  uint32_t col = 1;
  std::vector<Diag> diags;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char peek2() const { return pos + 1 < text.size() ? text[pos + 1] : '\0'; }

  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    return c;
  }

  SrcLoc loc() const { return {line, col}; }

  void error(SrcLoc at, const std::string &msg) {
    diags.push_back({file, at, "syntax", msg, ""});
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == ';' && peek2() == ';') {
        while (!eof() && peek() != '\n')
          advance();
      } else if (c == '(' && peek2() == ';') {
        SrcLoc start = loc();
        advance();
        advance();
        int depth = 1;
        while (!eof() && depth > 0) {
          if (peek() == '(' && peek2() == ';') {
            advance();
            advance();
            depth++;
          } else if (peek() == ';' && peek2() == ')') {
            advance();
            advance();
            depth--;
          } else {
            advance();
          }
        }
        if (depth > 0)
          error(start, "unterminated block comment");
      } else {
        break;
      }
    }
  }

  bool atom_char(char c) const {
    return !(c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '(' ||
             c == ')' || c == ';');
  }

  SExpr parse_one() {
    skip_ws();
    SExpr e;
    e.loc = loc();
    if (eof()) {
      error(e.loc, "unexpected end of input");
      return e;
    }
    if (peek() == '(') {
      advance();
      e.is_list = true;
      while (true) {
        skip_ws();
        if (eof()) {
          error(e.loc, "unterminated list");
          return e;
        }
        if (peek() == ')') {
          advance();
          return e;
        }
        e.items.push_back(parse_one());
        if (!diags.empty() && eof())
          return e;
      }
    }
    if (peek() == ')') {
      error(e.loc, "unexpected ')'");
      advance();
      return e;
    }
    while (!eof() && atom_char(peek()))
      e.atom.push_back(advance());
    if (e.atom.empty())
      error(e.loc, "empty token");
    return e;
  }
};

} // namespace

SExprResult parse_sexprs(const std::string &text, const std::string &filename) {
  Cursor cur{text, filename};
  SExprResult res;
  while (true) {
    cur.skip_ws();
    if (cur.eof())
      break;
    res.exprs.push_back(cur.parse_one());
    if (!cur.diags.empty())
      break;
  }
  res.diags = std::move(cur.diags);
  return res;
}

} // namespace ctw
