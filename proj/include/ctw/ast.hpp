#pragma once

#include "ctw/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ctw::front {

enum class InstrKind : uint8_t {
  Const,     // t.const imm
  Binary,    // t.add etc (also f32.add/f32.mul)
  Compare,   // t.eq etc
  Eqz,       // t.eqz
  Select,    // select a b cond      (all public)
  SSelect,   // t.sselect a b cond   (secret arms, s32 cond)
  Load,      // t.load / t.load8_u / ...
  Store,     // t.store / t.store8 / ...
  LocalGet,
  LocalSet,
  LocalTee,
  GlobalGet,
  GlobalSet,
  Block,
  Loop,
  If,
  Br,
  BrIf,
  Return,
  Call,
  Drop,
  Nop,
  Classify,   // iN -> sN, trusted code only
  Declassify, // sN -> iN, trusted code only
  Convert,    // width / int->float conversions
};

enum class BinOp : uint8_t { Add, Sub, Mul, And, Or, Xor, Shl, ShrU, ShrS, Rotl, Rotr };
enum class CmpOp : uint8_t { Eq, Ne, LtU, LtS, GtU, GtS, LeU, LeS, GeU, GeS };
enum class ConvOp : uint8_t { ExtendU, Wrap, FConvertU };

struct Instr {
  InstrKind kind = InstrKind::Nop;
  ValueType type;      // the `t` prefix of the op, where applicable
  BinOp bin = BinOp::Add;
  CmpOp cmp = CmpOp::Eq;
  ConvOp conv = ConvOp::ExtendU;
  int64_t intImm = 0;
  double fpImm = 0.0;
  std::string name;    // referenced local/global/function name
  std::string memName; // explicit memory name on loads/stores, may be empty
  uint32_t label = 0;  // br / br_if depth
  uint8_t accessBytes = 0; // load/store access width in bytes
  std::vector<Instr> ops;       // folded operand expressions
  std::vector<Instr> thenBody;  // Block/Loop body, If then-arm
  std::vector<Instr> elseBody;  // If else-arm
  SrcLoc loc;

  // filled by the type checker
  bool hasOut = false;
  ValueType outType;
  int32_t rLocal = -1, rGlobal = -1, rFunc = -1, rMem = -1;
};

struct Param {
  std::string name; // may be empty
  ValueType type;
  SrcLoc loc;
};

struct SourceFunction {
  std::string name;
  bool trusted = true; // `untrusted` keyword clears this
  std::vector<Param> params;
  std::vector<ValueType> results; // 0 or 1 entries
  std::vector<Param> locals;
  std::vector<Instr> body;
  SrcLoc loc;
};

struct SourceGlobal {
  std::string name;
  ValueType type;
  bool mut = false;
  int64_t init = 0;
  SrcLoc loc;
};

struct SourceMemory {
  std::string name;
  uint32_t pages = 1; // 64 KiB pages
  bool secret = false;
  bool imported = false;
  SrcLoc loc;
};

struct SourceModule {
  std::string filename;
  std::vector<SourceFunction> functions;
  std::vector<SourceGlobal> globals;
  std::vector<SourceMemory> memories;
};

struct ParseResult {
  SourceModule module;
  std::vector<Diag> diags;
  bool ok() const { return diags.empty(); }
};

// Parses the s-expression text dialect. On failure `diags` carries one entry
// per problem with line/column info.
ParseResult parse_text(const std::string &text, const std::string &filename);

// Prints a module back to dialect text; parse_text(print_module(m)) yields an
// equivalent tree.
std::string print_module(const SourceModule &m);

} // namespace ctw::front
