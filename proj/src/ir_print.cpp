#include "ctw/ir.hpp"

#include <sstream>

namespace ctw::ir {

namespace {

const char *cc_name(Cc c) {
  switch (c) {
  case Cc::Eq: return "eq";
  case Cc::Ne: return "ne";
  case Cc::Ult: return "ult";
  case Cc::Ule: return "ule";
  case Cc::Ugt: return "ugt";
  case Cc::Uge: return "uge";
  case Cc::Slt: return "slt";
  case Cc::Sle: return "sle";
  case Cc::Sgt: return "sgt";
  case Cc::Sge: return "sge";
  }
  return "?";
}

const char *alu_name(Op op) {
  switch (op) {
  case Op::Iadd: return "iadd";
  case Op::Isub: return "isub";
  case Op::Imul: return "imul";
  case Op::Iand: return "iand";
  case Op::Ior: return "ior";
  case Op::Ixor: return "ixor";
  case Op::Ishl: return "ishl";
  case Op::Iushr: return "iushr";
  case Op::Isshr: return "isshr";
  case Op::Irotl: return "irotl";
  case Op::Irotr: return "irotr";
  case Op::Fadd: return "fadd";
  case Op::Fmul: return "fmul";
  default: return "?";
  }
}

struct FnPrinter {
  const SsaFunction &f;
  std::ostringstream os;

  std::string v(Value x) const { return "v" + std::to_string(x); }

  std::string width_ty(Value x) const {
    const ValInfo &vi = f.valueInfo[x];
    if (vi.fp)
      return vi.width == 32 ? "f32" : "f64";
    return vi.width == 32 ? "i32" : "i64";
  }

  void args(const Inst &in, size_t from = 0) {
    for (size_t i = from; i < in.args.size(); i++) {
      if (i != from)
        os << ", ";
      os << v(in.args[i]);
    }
  }

  void print_inst(const Inst &in) {
    const char *dit = in.dit ? "DIT" : "";
    switch (in.op) {
    case Op::Alias:
      os << v(in.result) << " -> " << v(in.args[0]);
      return;
    case Op::Iconst:
      os << v(in.result) << " = iconst" << dit << "." << width_ty(in.result)
         << " " << in.imm;
      return;
    case Op::Fconst:
      os << v(in.result) << " = fconst." << width_ty(in.result) << " 0x"
         << std::hex << static_cast<uint64_t>(in.imm) << std::dec;
      return;
    case Op::IaddImm:
      os << v(in.result) << " = iadd_imm" << dit << " " << in.imm << ", "
         << v(in.args[0]);
      return;
    case Op::Icmp:
      os << v(in.result) << " = icmp" << dit << " " << cc_name(in.cc) << " ";
      args(in);
      return;
    case Op::Fcmp:
      os << v(in.result) << " = fcmp " << cc_name(in.cc) << " ";
      args(in);
      return;
    case Op::Bint:
      os << v(in.result) << " = bint" << dit << "." << width_ty(in.result) << " ";
      args(in);
      return;
    case Op::Select:
      os << v(in.result) << " = select" << dit << " ";
      args(in);
      return;
    case Op::Copy:
      os << v(in.result) << " = copy" << dit << " ";
      args(in);
      return;
    case Op::Uextend:
      os << v(in.result) << " = uextend" << dit << "." << width_ty(in.result)
         << " ";
      args(in);
      return;
    case Op::Ireduce:
      os << v(in.result) << " = ireduce" << dit << "." << width_ty(in.result)
         << " ";
      args(in);
      return;
    case Op::FcvtU:
      os << v(in.result) << " = fcvt_u." << width_ty(in.result) << " ";
      args(in);
      return;
    case Op::Load:
      os << v(in.result) << " = load" << unsigned(in.accessBytes) * 8 << "."
         << width_ty(in.result) << " mem" << in.memId << ", " << v(in.args[0]);
      return;
    case Op::Store:
      os << "store" << unsigned(in.accessBytes) * 8 << " mem" << in.memId
         << ", " << v(in.args[0]) << ", " << v(in.args[1]);
      return;
    case Op::Gload:
      os << v(in.result) << " = gload." << width_ty(in.result) << " g"
         << in.globalId;
      return;
    case Op::Gstore:
      os << "gstore g" << in.globalId << ", " << v(in.args[0]);
      return;
    case Op::Call:
      if (in.result != kNoValue)
        os << v(in.result) << " = ";
      os << "call fn" << in.callee << "(";
      args(in);
      os << ")";
      return;
    case Op::Phi:
      os << v(in.result) << " = phi(";
      args(in);
      os << ")";
      return;
    default:
      os << v(in.result) << " = " << alu_name(in.op) << dit << " ";
      args(in);
      return;
    }
  }

  void print_edge(BlockId dst, const std::vector<Value> &eargs) {
    os << "block" << dst;
    if (!eargs.empty()) {
      os << "(";
      for (size_t i = 0; i < eargs.size(); i++) {
        if (i)
          os << ", ";
        os << v(eargs[i]);
      }
      os << ")";
    }
  }

  void run() {
    os << "function " << (f.name.empty() ? "u0:0" : f.name) << "(";
    for (size_t i = 0; i < f.paramInfo.size(); i++) {
      if (i)
        os << ", ";
      const auto &pi = f.paramInfo[i];
      os << (pi.fp ? (pi.width == 32 ? "f32" : "f64")
                   : (pi.width == 32 ? "i32" : "i64"));
    }
    os << ")";
    if (f.resultWidth != 0)
      os << " -> i" << unsigned(f.resultWidth);
    os << " {\n";
    for (BlockId b = 0; b < f.blocks.size(); b++) {
      const Block &blk = f.blocks[b];
      os << "block" << b;
      if (!blk.params.empty()) {
        os << "(";
        for (size_t i = 0; i < blk.params.size(); i++) {
          if (i)
            os << ", ";
          os << v(blk.params[i]) << ": " << width_ty(blk.params[i]);
        }
        os << ")";
      }
      os << ":\n";
      for (const auto &in : blk.insts) {
        os << "    ";
        print_inst(in);
        os << "\n";
      }
      os << "    ";
      switch (blk.term.kind) {
      case Terminator::Kind::Jump:
        os << "jump ";
        print_edge(blk.term.taken, blk.term.takenArgs);
        break;
      case Terminator::Kind::Brnz:
        os << "brnz " << v(blk.term.cond) << ", ";
        print_edge(blk.term.taken, blk.term.takenArgs);
        os << "\n    jump ";
        print_edge(blk.term.fall, blk.term.fallArgs);
        break;
      case Terminator::Kind::Return:
        os << "return";
        if (!blk.term.retVals.empty())
          os << " " << v(blk.term.retVals[0]);
        break;
      }
      os << "\n";
      if (b + 1 < f.blocks.size())
        os << "\n";
    }
    os << "}\n";
  }
};

} // namespace

std::string print_function(const SsaFunction &f) {
  FnPrinter p{f};
  p.run();
  return p.os.str();
}

std::string print_module(const IrModule &m) {
  std::string out;
  for (const auto &f : m.functions) {
    out += print_function(f);
    out += "\n";
  }
  return out;
}

} // namespace ctw::ir
