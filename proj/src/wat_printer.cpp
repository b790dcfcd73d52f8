#include "ctw/ast.hpp"

#include <sstream>

namespace ctw::front {

namespace {

const char *bin_name(BinOp b) {
  switch (b) {
  case BinOp::Add: return "add";
  case BinOp::Sub: return "sub";
  case BinOp::Mul: return "mul";
  case BinOp::And: return "and";
  case BinOp::Or: return "or";
  case BinOp::Xor: return "xor";
  case BinOp::Shl: return "shl";
  case BinOp::ShrU: return "shr_u";
  case BinOp::ShrS: return "shr_s";
  case BinOp::Rotl: return "rotl";
  case BinOp::Rotr: return "rotr";
  }
  return "?";
}

const char *cmp_name(CmpOp c) {
  switch (c) {
  case CmpOp::Eq: return "eq";
  case CmpOp::Ne: return "ne";
  case CmpOp::LtU: return "lt_u";
  case CmpOp::LtS: return "lt_s";
  case CmpOp::GtU: return "gt_u";
  case CmpOp::GtS: return "gt_s";
  case CmpOp::LeU: return "le_u";
  case CmpOp::LeS: return "le_s";
  case CmpOp::GeU: return "ge_u";
  case CmpOp::GeS: return "ge_s";
  }
  return "?";
}

struct Printer {
  std::ostringstream os;
  int indent = 0;

  void nl() {
    os << '\n';
    for (int i = 0; i < indent; i++)
      os << "  ";
  }

  void print_body(const std::vector<Instr> &body) {
    indent++;
    for (const auto &in : body) {
      nl();
      print(in);
    }
    indent--;
  }

  void print_ops(const Instr &in) {
    for (const auto &op : in.ops) {
      os << ' ';
      print(op);
    }
  }

  void print(const Instr &in) {
    switch (in.kind) {
    case InstrKind::Const:
      os << '(' << type_name(in.type) << ".const ";
      if (in.type.fp)
        os << in.fpImm;
      else
        os << in.intImm;
      os << ')';
      return;
    case InstrKind::Binary:
      os << '(' << type_name(in.type) << '.' << bin_name(in.bin);
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Compare:
      os << '(' << type_name(in.type) << '.' << cmp_name(in.cmp);
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Eqz:
      os << '(' << type_name(in.type) << ".eqz";
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Select:
      os << "(select";
      print_ops(in);
      os << ')';
      return;
    case InstrKind::SSelect:
      os << '(' << type_name(in.type) << ".sselect";
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Load: {
      os << '(' << type_name(in.type) << ".load";
      unsigned full = in.type.width / 8;
      if (in.accessBytes != full)
        os << unsigned(in.accessBytes) * 8 << "_u";
      if (!in.memName.empty())
        os << ' ' << in.memName;
      print_ops(in);
      os << ')';
      return;
    }
    case InstrKind::Store: {
      os << '(' << type_name(in.type) << ".store";
      unsigned full = in.type.width / 8;
      if (in.accessBytes != full)
        os << unsigned(in.accessBytes) * 8;
      if (!in.memName.empty())
        os << ' ' << in.memName;
      print_ops(in);
      os << ')';
      return;
    }
    case InstrKind::LocalGet:
      os << "(get_local " << in.name << ')';
      return;
    case InstrKind::LocalSet:
      os << "(set_local " << in.name;
      print_ops(in);
      os << ')';
      return;
    case InstrKind::LocalTee:
      os << "(tee_local " << in.name;
      print_ops(in);
      os << ')';
      return;
    case InstrKind::GlobalGet:
      os << "(get_global " << in.name << ')';
      return;
    case InstrKind::GlobalSet:
      os << "(set_global " << in.name;
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Block:
      os << "(block";
      print_body(in.thenBody);
      os << ')';
      return;
    case InstrKind::Loop:
      os << "(loop";
      print_body(in.thenBody);
      os << ')';
      return;
    case InstrKind::If:
      os << "(if ";
      print(in.ops[0]);
      indent++;
      nl();
      os << "(then";
      print_body(in.thenBody);
      os << ')';
      if (!in.elseBody.empty()) {
        nl();
        os << "(else";
        print_body(in.elseBody);
        os << ')';
      }
      indent--;
      os << ')';
      return;
    case InstrKind::Br:
      os << "(br " << in.label << ')';
      return;
    case InstrKind::BrIf:
      os << "(br_if " << in.label;
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Return:
      os << "(return";
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Call:
      os << "(call " << in.name;
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Drop:
      os << "(drop";
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Nop:
      os << "(nop)";
      return;
    case InstrKind::Classify:
      os << "(classify";
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Declassify:
      os << "(declassify";
      print_ops(in);
      os << ')';
      return;
    case InstrKind::Convert: {
      os << '(' << type_name(in.type) << '.';
      if (in.conv == ConvOp::ExtendU)
        os << (in.type.secret ? "extend_s32_u" : "extend_i32_u");
      else if (in.conv == ConvOp::Wrap)
        os << (in.type.secret ? "wrap_s64" : "wrap_i64");
      else
        os << "convert_i32_u";
      print_ops(in);
      os << ')';
      return;
    }
    }
  }
};

} // namespace

std::string print_module(const SourceModule &m) {
  Printer p;
  p.os << "(module";
  p.indent = 1;
  for (const auto &mem : m.memories) {
    p.nl();
    p.os << "(memory";
    if (!mem.name.empty())
      p.os << ' ' << mem.name;
    p.os << ' ' << mem.pages;
    if (mem.secret)
      p.os << " secret";
    if (mem.imported)
      p.os << " imported";
    p.os << ')';
  }
  for (const auto &g : m.globals) {
    p.nl();
    p.os << "(global";
    if (!g.name.empty())
      p.os << ' ' << g.name;
    if (g.mut)
      p.os << " (mut " << type_name(g.type) << ')';
    else
      p.os << ' ' << type_name(g.type);
    p.os << " (" << type_name(g.type) << ".const " << g.init << "))";
  }
  for (const auto &f : m.functions) {
    p.nl();
    p.os << "(func";
    if (!f.name.empty())
      p.os << ' ' << f.name;
    if (!f.trusted)
      p.os << " untrusted";
    for (const auto &pa : f.params) {
      p.os << " (param";
      if (!pa.name.empty())
        p.os << ' ' << pa.name;
      p.os << ' ' << type_name(pa.type) << ')';
    }
    for (const auto &r : f.results)
      p.os << " (result " << type_name(r) << ')';
    for (const auto &l : f.locals) {
      p.os << " (local";
      if (!l.name.empty())
        p.os << ' ' << l.name;
      p.os << ' ' << type_name(l.type) << ')';
    }
    p.print_body(f.body);
    p.os << ')';
  }
  p.os << ")\n";
  return p.os.str();
}

} // namespace ctw::front
