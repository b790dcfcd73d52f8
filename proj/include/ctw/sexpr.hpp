#pragma once

#include "ctw/types.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace ctw {

// Minimal s-expression reader for the .wat dialect. Supports line comments
// (;; ...) and block comments ((; ... ;)).
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SrcLoc loc;

  bool is_atom() const { return !is_list; }
  bool head_is(const std::string &s) const {
    return is_list && !items.empty() && items[0].is_atom() && items[0].atom == s;
  }
  size_t size() const { return items.size(); }
};

struct SExprResult {
  std::vector<SExpr> exprs; // top-level expressions
  std::vector<Diag> diags;
  bool ok() const { return diags.empty(); }
};

SExprResult parse_sexprs(const std::string &text, const std::string &filename);

} // namespace ctw
