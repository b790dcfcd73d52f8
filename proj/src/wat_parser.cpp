#include "ctw/ast.hpp"
#include "ctw/sexpr.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>

namespace ctw::front {

namespace {

struct Parser {
  std::string file;
  std::vector<Diag> diags;

  void error(SrcLoc loc, const std::string &rule, const std::string &msg) {
    diags.push_back({file, loc, rule, msg, ""});
  }

  bool parse_int(const std::string &s, int64_t &out) {
    if (s.empty())
      return false;
    errno = 0;
    const char *c = s.c_str();
    char *end = nullptr;
    bool neg = false;
    if (*c == '-') {
      neg = true;
      c++;
    }
    uint64_t v = std::strtoull(c, &end, 0);
    if (errno != 0 || end == c || *end != '\0')
      return false;
    out = neg ? -static_cast<int64_t>(v) : static_cast<int64_t>(v);
    return true;
  }

  bool parse_fp(const std::string &s, double &out) {
    errno = 0;
    char *end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end != s.c_str() && *end == '\0';
  }

  // --- instructions ---------------------------------------------------

  Instr parse_instr(const SExpr &e) {
    Instr in;
    in.loc = e.loc;
    if (!e.is_list || e.items.empty() || !e.items[0].is_atom()) {
      error(e.loc, "syntax", "expected an instruction list");
      return in;
    }
    const std::string &head = e.items[0].atom;

    auto operands_from = [&](size_t first) {
      for (size_t i = first; i < e.items.size(); i++)
        in.ops.push_back(parse_instr(e.items[i]));
    };
    auto expect_operands = [&](size_t first, size_t n, const char *what) {
      if (e.items.size() - first != n) {
        error(e.loc, "syntax", std::string(what) + ": expected " +
                                   std::to_string(n) + " operand(s)");
        return false;
      }
      operands_from(first);
      return true;
    };

    // untyped instruction heads
    if (head == "block" || head == "loop") {
      in.kind = head == "block" ? InstrKind::Block : InstrKind::Loop;
      for (size_t i = 1; i < e.items.size(); i++)
        in.thenBody.push_back(parse_instr(e.items[i]));
      return in;
    }
    if (head == "if") {
      in.kind = InstrKind::If;
      if (e.items.size() < 3) {
        error(e.loc, "syntax", "if: expected condition and then-arm");
        return in;
      }
      in.ops.push_back(parse_instr(e.items[1]));
      const SExpr &thenE = e.items[2];
      if (!thenE.head_is("then")) {
        error(thenE.loc, "syntax", "if: expected (then ...)");
        return in;
      }
      for (size_t i = 1; i < thenE.items.size(); i++)
        in.thenBody.push_back(parse_instr(thenE.items[i]));
      if (e.items.size() >= 4) {
        const SExpr &elseE = e.items[3];
        if (!elseE.head_is("else")) {
          error(elseE.loc, "syntax", "if: expected (else ...)");
          return in;
        }
        for (size_t i = 1; i < elseE.items.size(); i++)
          in.elseBody.push_back(parse_instr(elseE.items[i]));
        if (e.items.size() > 4)
          error(e.items[4].loc, "syntax", "if: trailing items");
      }
      return in;
    }
    if (head == "br" || head == "br_if") {
      in.kind = head == "br" ? InstrKind::Br : InstrKind::BrIf;
      if (e.items.size() < 2 || !e.items[1].is_atom()) {
        error(e.loc, "syntax", "br: expected label depth");
        return in;
      }
      int64_t depth;
      if (!parse_int(e.items[1].atom, depth) || depth < 0) {
        error(e.items[1].loc, "syntax", "br: bad label depth");
        return in;
      }
      in.label = static_cast<uint32_t>(depth);
      if (in.kind == InstrKind::BrIf) {
        expect_operands(2, 1, "br_if");
      } else if (e.items.size() > 2) {
        error(e.loc, "syntax", "br: trailing items");
      }
      return in;
    }
    if (head == "return") {
      in.kind = InstrKind::Return;
      operands_from(1);
      if (in.ops.size() > 1)
        error(e.loc, "syntax", "return: at most one value");
      return in;
    }
    if (head == "call") {
      in.kind = InstrKind::Call;
      if (e.items.size() < 2 || !e.items[1].is_atom()) {
        error(e.loc, "syntax", "call: expected function name");
        return in;
      }
      in.name = e.items[1].atom;
      operands_from(2);
      return in;
    }
    if (head == "drop") {
      in.kind = InstrKind::Drop;
      expect_operands(1, 1, "drop");
      return in;
    }
    if (head == "nop") {
      in.kind = InstrKind::Nop;
      return in;
    }
    if (head == "select") {
      in.kind = InstrKind::Select;
      expect_operands(1, 3, "select");
      return in;
    }
    if (head == "classify" || head == "declassify") {
      in.kind = head == "classify" ? InstrKind::Classify : InstrKind::Declassify;
      expect_operands(1, 1, head.c_str());
      return in;
    }
    if (head == "get_local" || head == "get_global" || head == "set_local" ||
        head == "set_global" || head == "tee_local") {
      if (e.items.size() < 2 || !e.items[1].is_atom()) {
        error(e.loc, "syntax", head + ": expected a name");
        return in;
      }
      in.name = e.items[1].atom;
      if (head == "get_local") {
        in.kind = InstrKind::LocalGet;
        if (e.items.size() != 2)
          error(e.loc, "syntax", "get_local: trailing items");
      } else if (head == "get_global") {
        in.kind = InstrKind::GlobalGet;
        if (e.items.size() != 2)
          error(e.loc, "syntax", "get_global: trailing items");
      } else if (head == "set_local") {
        in.kind = InstrKind::LocalSet;
        expect_operands(2, 1, "set_local");
      } else if (head == "tee_local") {
        in.kind = InstrKind::LocalTee;
        expect_operands(2, 1, "tee_local");
      } else {
        in.kind = InstrKind::GlobalSet;
        expect_operands(2, 1, "set_global");
      }
      return in;
    }

    // typed head: `<type>.<op>`
    size_t dot = head.find('.');
    if (dot == std::string::npos) {
      error(e.loc, "unknown-opcode", "unknown instruction '" + head + "'");
      return in;
    }
    auto ty = parse_value_type(head.substr(0, dot));
    if (!ty) {
      error(e.loc, "malformed-type", "bad type prefix in '" + head + "'");
      return in;
    }
    in.type = *ty;
    std::string op = head.substr(dot + 1);

    auto mem_operands = [&](size_t nAfterMem, const char *what) {
      // optional leading $mem name
      size_t first = 1;
      if (e.items.size() > first && e.items[first].is_atom() &&
          !e.items[first].atom.empty() && e.items[first].atom[0] == '$') {
        in.memName = e.items[first].atom;
        first++;
      }
      expect_operands(first, nAfterMem, what);
    };

    if (op == "const") {
      in.kind = InstrKind::Const;
      if (e.items.size() != 2 || !e.items[1].is_atom()) {
        error(e.loc, "syntax", "const: expected one literal");
        return in;
      }
      if (in.type.fp) {
        if (!parse_fp(e.items[1].atom, in.fpImm))
          error(e.items[1].loc, "syntax", "bad float literal");
      } else if (!parse_int(e.items[1].atom, in.intImm)) {
        error(e.items[1].loc, "syntax", "bad integer literal");
      }
      return in;
    }

    static const struct {
      const char *name;
      BinOp op;
    } kBinOps[] = {{"add", BinOp::Add},   {"sub", BinOp::Sub},
                   {"mul", BinOp::Mul},   {"and", BinOp::And},
                   {"or", BinOp::Or},     {"xor", BinOp::Xor},
                   {"shl", BinOp::Shl},   {"shr_u", BinOp::ShrU},
                   {"shr_s", BinOp::ShrS},{"rotl", BinOp::Rotl},
                   {"rotr", BinOp::Rotr}};
    for (const auto &b : kBinOps) {
      if (op == b.name) {
        in.kind = InstrKind::Binary;
        in.bin = b.op;
        expect_operands(1, 2, b.name);
        return in;
      }
    }

    static const struct {
      const char *name;
      CmpOp op;
    } kCmpOps[] = {{"eq", CmpOp::Eq},     {"ne", CmpOp::Ne},
                   {"lt_u", CmpOp::LtU},  {"lt_s", CmpOp::LtS},
                   {"gt_u", CmpOp::GtU},  {"gt_s", CmpOp::GtS},
                   {"le_u", CmpOp::LeU},  {"le_s", CmpOp::LeS},
                   {"ge_u", CmpOp::GeU},  {"ge_s", CmpOp::GeS}};
    for (const auto &c : kCmpOps) {
      if (op == c.name) {
        in.kind = InstrKind::Compare;
        in.cmp = c.op;
        expect_operands(1, 2, c.name);
        return in;
      }
    }

    if (op == "eqz") {
      in.kind = InstrKind::Eqz;
      expect_operands(1, 1, "eqz");
      return in;
    }
    if (op == "sselect") {
      in.kind = InstrKind::SSelect;
      expect_operands(1, 3, "sselect");
      return in;
    }
    if (op == "load" || op == "load8_u" || op == "load16_u" || op == "load32_u") {
      in.kind = InstrKind::Load;
      in.accessBytes = op == "load" ? in.type.width / 8
                       : op == "load8_u" ? 1
                       : op == "load16_u" ? 2
                                          : 4;
      mem_operands(1, "load");
      return in;
    }
    if (op == "store" || op == "store8" || op == "store16" || op == "store32") {
      in.kind = InstrKind::Store;
      in.accessBytes = op == "store" ? in.type.width / 8
                       : op == "store8" ? 1
                       : op == "store16" ? 2
                                         : 4;
      mem_operands(2, "store");
      return in;
    }
    if (op == "extend_i32_u" || op == "extend_s32_u") {
      in.kind = InstrKind::Convert;
      in.conv = ConvOp::ExtendU;
      expect_operands(1, 1, "extend");
      return in;
    }
    if (op == "wrap_i64" || op == "wrap_s64") {
      in.kind = InstrKind::Convert;
      in.conv = ConvOp::Wrap;
      expect_operands(1, 1, "wrap");
      return in;
    }
    if (op == "convert_i32_u") {
      in.kind = InstrKind::Convert;
      in.conv = ConvOp::FConvertU;
      expect_operands(1, 1, "convert");
      return in;
    }

    error(e.loc, "unknown-opcode", "unknown instruction '" + head + "'");
    return in;
  }

  // --- module fields --------------------------------------------------

  void parse_func(const SExpr &e, SourceModule &m) {
    SourceFunction f;
    f.loc = e.loc;
    size_t i = 1;
    if (i < e.size() && e.items[i].is_atom() && e.items[i].atom[0] == '$')
      f.name = e.items[i++].atom;
    if (i < e.size() && e.items[i].is_atom() && e.items[i].atom == "untrusted") {
      f.trusted = false;
      i++;
    }
    for (; i < e.size(); i++) {
      const SExpr &it = e.items[i];
      if (it.head_is("param") || it.head_is("local")) {
        bool isParam = it.items[0].atom == "param";
        Param p;
        p.loc = it.loc;
        size_t j = 1;
        if (j < it.size() && it.items[j].is_atom() && it.items[j].atom[0] == '$')
          p.name = it.items[j++].atom;
        if (j >= it.size() || !it.items[j].is_atom()) {
          error(it.loc, "syntax", "param/local: expected a type");
          continue;
        }
        auto t = parse_value_type(it.items[j].atom);
        if (!t) {
          error(it.items[j].loc, "malformed-type",
                "bad type '" + it.items[j].atom + "'");
          continue;
        }
        p.type = *t;
        if (isParam) {
          if (!f.body.empty() || !f.locals.empty())
            error(it.loc, "syntax", "param after locals or body");
          f.params.push_back(p);
        } else {
          if (!f.body.empty())
            error(it.loc, "syntax", "local after body");
          f.locals.push_back(p);
        }
      } else if (it.head_is("result")) {
        if (it.size() != 2 || !it.items[1].is_atom()) {
          error(it.loc, "syntax", "result: expected one type");
          continue;
        }
        auto t = parse_value_type(it.items[1].atom);
        if (!t) {
          error(it.items[1].loc, "malformed-type",
                "bad type '" + it.items[1].atom + "'");
          continue;
        }
        if (!f.results.empty()) {
          error(it.loc, "syntax", "multiple results are not supported");
          continue;
        }
        f.results.push_back(*t);
      } else {
        f.body.push_back(parse_instr(it));
      }
    }
    m.functions.push_back(std::move(f));
  }

  void parse_global(const SExpr &e, SourceModule &m) {
    SourceGlobal g;
    g.loc = e.loc;
    size_t i = 1;
    if (i < e.size() && e.items[i].is_atom() && e.items[i].atom[0] == '$')
      g.name = e.items[i++].atom;
    if (i >= e.size()) {
      error(e.loc, "syntax", "global: expected a type");
      return;
    }
    const SExpr &tyE = e.items[i];
    std::string tyName;
    if (tyE.is_atom()) {
      tyName = tyE.atom;
    } else if (tyE.head_is("mut") && tyE.size() == 2 && tyE.items[1].is_atom()) {
      g.mut = true;
      tyName = tyE.items[1].atom;
    } else {
      error(tyE.loc, "syntax", "global: bad type form");
      return;
    }
    auto t = parse_value_type(tyName);
    if (!t) {
      error(tyE.loc, "malformed-type", "bad type '" + tyName + "'");
      return;
    }
    if (t->fp) {
      error(tyE.loc, "malformed-type", "float globals are not supported");
      return;
    }
    g.type = *t;
    i++;
    if (i < e.size()) {
      Instr init = parse_instr(e.items[i]);
      if (init.kind != InstrKind::Const || init.type != g.type) {
        error(e.items[i].loc, "syntax",
              "global initializer must be a const of the global's type");
      } else {
        g.init = init.intImm;
      }
      i++;
    }
    if (i < e.size())
      error(e.items[i].loc, "syntax", "global: trailing items");
    m.globals.push_back(std::move(g));
  }

  void parse_memory(const SExpr &e, SourceModule &m) {
    SourceMemory mem;
    mem.loc = e.loc;
    size_t i = 1;
    if (i < e.size() && e.items[i].is_atom() && e.items[i].atom[0] == '$')
      mem.name = e.items[i++].atom;
    if (i >= e.size() || !e.items[i].is_atom()) {
      error(e.loc, "syntax", "memory: expected page count");
      return;
    }
    int64_t pages;
    if (!parse_int(e.items[i].atom, pages) || pages < 0 || pages > 1024) {
      error(e.items[i].loc, "syntax", "memory: bad page count");
      return;
    }
    mem.pages = static_cast<uint32_t>(pages);
    i++;
    for (; i < e.size(); i++) {
      if (e.items[i].is_atom() && e.items[i].atom == "secret")
        mem.secret = true;
      else if (e.items[i].is_atom() && e.items[i].atom == "imported")
        mem.imported = true;
      else
        error(e.items[i].loc, "syntax", "memory: unknown attribute");
    }
    m.memories.push_back(std::move(mem));
  }

  SourceModule parse_module(const SExpr &e) {
    SourceModule m;
    m.filename = file;
    if (!e.head_is("module")) {
      error(e.loc, "syntax", "expected (module ...)");
      return m;
    }
    for (size_t i = 1; i < e.size(); i++) {
      const SExpr &it = e.items[i];
      if (it.head_is("func"))
        parse_func(it, m);
      else if (it.head_is("global"))
        parse_global(it, m);
      else if (it.head_is("memory"))
        parse_memory(it, m);
      else
        error(it.loc, "syntax", "unknown module field");
    }
    return m;
  }
};

} // namespace

ParseResult parse_text(const std::string &text, const std::string &filename) {
  ParseResult res;
  auto sx = parse_sexprs(text, filename);
  if (!sx.ok()) {
    res.diags = std::move(sx.diags);
    return res;
  }
  if (sx.exprs.size() != 1) {
    res.diags.push_back({filename, sx.exprs.empty() ? SrcLoc{} : sx.exprs[1].loc,
                         "syntax", "expected exactly one (module ...)", ""});
    return res;
  }
  Parser p;
  p.file = filename;
  res.module = p.parse_module(sx.exprs[0]);
  res.diags = std::move(p.diags);
  return res;
}

} // namespace ctw::front
