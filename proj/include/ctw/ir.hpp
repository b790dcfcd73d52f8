#pragma once

#include "ctw/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ctw::ir {

using Value = uint32_t;
using BlockId = uint32_t;
constexpr Value kNoValue = ~0u;
constexpr BlockId kNoBlock = ~0u;

enum class Op : uint8_t {
  Iconst,
  Iadd,
  Isub,
  Imul,
  Iand,
  Ior,
  Ixor,
  Ishl,
  Iushr,
  Isshr,
  Irotl,
  Irotr,
  IaddImm, // imm + arg0, produced by peephole rewrites
  Icmp,
  Bint,   // 0/1 widening of a comparison result
  Select, // args: cond, a, b
  Copy,
  Uextend, // 32 -> 64 zero extension
  Ireduce, // 64 -> 32 truncation
  Fconst,
  Fadd,
  Fmul,
  Fcmp,
  FcvtU, // unsigned int -> float
  Load,
  Store, // args: addr, value
  Gload,
  Gstore, // args: value
  Call,
  Phi,   // one arg per predecessor, aligned with Block::preds
  Alias, // args: target; prints as `vR -> vT`
};

enum class Cc : uint8_t { Eq, Ne, Ult, Ule, Ugt, Uge, Slt, Sle, Sgt, Sge };

// Opcodes that may carry dit=true. Branches, loads/stores and float ops are
// never DIT at the IR level; secrecy of their results is derived from the
// memory/global/call signature instead.
bool op_allows_dit(Op op);
bool op_is_pure(Op op);

struct Inst {
  Op op;
  bool dit = false;
  Value result = kNoValue;
  std::vector<Value> args;
  int64_t imm = 0; // Iconst / IaddImm payload; Fconst raw bits
  Cc cc = Cc::Eq;
  uint32_t memId = ~0u;
  uint32_t globalId = ~0u;
  uint32_t callee = ~0u;
  uint8_t accessBytes = 0; // Load/Store
};

struct Terminator {
  enum class Kind : uint8_t { Jump, Brnz, Return } kind = Kind::Return;
  Value cond = kNoValue; // Brnz
  BlockId taken = kNoBlock;
  std::vector<Value> takenArgs;
  BlockId fall = kNoBlock; // Brnz fallthrough
  std::vector<Value> fallArgs;
  std::vector<Value> retVals; // Return, 0 or 1 entries
};

struct Block {
  std::vector<Value> params;
  std::vector<Inst> insts;
  Terminator term;
  // Predecessors, filled by compute_preds(); Phi args align with this order.
  std::vector<BlockId> preds;
};

struct ValInfo {
  uint8_t width = 32; // semantic width in bits
  bool fp = false;
};

// IR-level signature. Param 0 is the implicit vmctx pointer for functions
// produced by the frontend; hand-parsed functions list params verbatim.
struct SsaFunction {
  std::string name;
  std::vector<ValInfo> paramInfo;
  std::vector<Value> paramValues; // value ids of the entry block params
  uint8_t resultWidth = 0;        // 0: void
  std::vector<Block> blocks;
  BlockId entry = 0;
  std::vector<ValInfo> valueInfo; // indexed by Value

  Value new_value(uint8_t width, bool fp = false) {
    valueInfo.push_back({width, fp});
    return static_cast<Value>(valueInfo.size() - 1);
  }
  uint32_t num_values() const { return static_cast<uint32_t>(valueInfo.size()); }
  uint64_t inst_count() const {
    uint64_t n = 0;
    for (const auto &b : blocks)
      n += b.insts.size();
    return n;
  }
};

// Wasm-level signature metadata carried alongside the IR.
struct WasmSig {
  std::vector<ValueType> params;
  std::vector<ValueType> results; // 0 or 1
  bool trusted = true;
};

struct GlobalMeta {
  std::string name;
  ValueType type;
  bool mut = false;
  int64_t init = 0;
};

struct MemoryMeta {
  std::string name;
  uint32_t pages = 1;
  bool secret = false;
  bool imported = false;
  uint64_t byte_size() const { return uint64_t(pages) * 65536; }
};

struct IrModule {
  std::vector<SsaFunction> functions;
  std::vector<WasmSig> sigs; // parallel to functions
  std::vector<GlobalMeta> globals;
  std::vector<MemoryMeta> memories;
};

// Recomputes Block::preds from the terminators.
void compute_preds(SsaFunction &f);

// Resolves v through Alias instructions (alias chains are short).
Value resolve_alias(const SsaFunction &f, Value v);

// Validates SSA structure: single assignment, argument arity at joins,
// terminator sanity. Returns problems as strings (empty = valid).
std::vector<std::string> validate(const SsaFunction &f);

// Replaces block parameters with explicit Phi instructions. Jump argument
// lists are cleared; Phi args align with Block::preds.
SsaFunction params_to_phi(const SsaFunction &f);

std::string print_function(const SsaFunction &f);
std::string print_module(const IrModule &m);

struct IrParseResult {
  SsaFunction fn;
  std::vector<Diag> diags;
  bool ok() const { return diags.empty(); }
};

// Parses one function in the textual IR syntax, e.g.
//   function u0:1(i64 vmctx, i64, i32) -> i32 {
//   block0(v0: i64, v1: i64, v2: i32):
//       v4 = iconst.i32 0
//       ...
IrParseResult parse_function(const std::string &text);

} // namespace ctw::ir
