#include "ctw/typecheck.hpp"

#include <map>
#include <optional>

namespace ctw::front {

namespace {

struct Checker {
  const SourceModule &m;
  std::vector<Diag> diags;
  uint64_t visits = 0;
  uint64_t count = 0;

  std::map<std::string, int32_t> funcIdx, globalIdx, memIdx;

  // per-function state
  const SourceFunction *fn = nullptr;
  std::vector<Param> env; // params then locals
  std::map<std::string, int32_t> localIdx;
  uint32_t labelDepth = 0;
  std::vector<std::string> path;

  explicit Checker(const SourceModule &mod) : m(mod) {}

  std::string path_str() const {
    std::string s;
    for (const auto &p : path) {
      if (!s.empty())
        s += '/';
      s += p;
    }
    return s;
  }

  void violation(SrcLoc loc, const std::string &rule, const std::string &msg) {
    diags.push_back({m.filename, loc, rule, msg, path_str()});
  }

  // --- module environment ----------------------------------------------

  template <typename T>
  void index_names(const std::vector<T> &items, std::map<std::string, int32_t> &idx,
                   const char *what) {
    for (size_t i = 0; i < items.size(); i++) {
      if (items[i].name.empty())
        continue;
      if (!idx.emplace(items[i].name, static_cast<int32_t>(i)).second)
        violation(items[i].loc, "duplicate-name",
                  std::string(what) + " '" + items[i].name + "' defined twice");
    }
  }

  int32_t resolve(const std::map<std::string, int32_t> &idx, size_t n,
                  const std::string &name, SrcLoc loc, const char *what) {
    if (!name.empty() && name[0] != '$') {
      // numeric reference
      char *end = nullptr;
      long v = std::strtol(name.c_str(), &end, 10);
      if (end && *end == '\0' && v >= 0 && static_cast<size_t>(v) < n)
        return static_cast<int32_t>(v);
    }
    auto it = idx.find(name);
    if (it == idx.end()) {
      violation(loc, "unknown-name",
                std::string("unresolved ") + what + " '" + name + "'");
      return -1;
    }
    return it->second;
  }

  // --- instruction checking ---------------------------------------------

  static size_t min_operands(InstrKind k) {
    switch (k) {
    case InstrKind::Binary:
    case InstrKind::Compare:
    case InstrKind::Store:
      return 2;
    case InstrKind::Select:
    case InstrKind::SSelect:
      return 3;
    case InstrKind::Eqz:
    case InstrKind::Drop:
    case InstrKind::Classify:
    case InstrKind::Declassify:
    case InstrKind::Convert:
    case InstrKind::LocalSet:
    case InstrKind::LocalTee:
    case InstrKind::GlobalSet:
    case InstrKind::BrIf:
    case InstrKind::If:
    case InstrKind::Load:
      return 1;
    default:
      return 0;
    }
  }

  // Checks `in` and returns its value type, or nullopt when it yields none.
  std::optional<ValueType> check(Instr &in) {
    visits++;
    if (in.ops.size() < min_operands(in.kind)) {
      violation(in.loc, "syntax", "instruction is missing operands");
      return std::nullopt;
    }
    switch (in.kind) {
    case InstrKind::Const:
      return out(in, in.type);

    case InstrKind::Binary: {
      path.push_back(type_name(in.type) + "." + "binop");
      auto a = expect_value(in.ops[0]);
      auto b = expect_value(in.ops[1]);
      path.pop_back();
      if (in.type.fp) {
        if (in.bin != BinOp::Add && in.bin != BinOp::Mul) {
          violation(in.loc, "unknown-opcode", "unsupported float operation");
          return out(in, in.type);
        }
        check_float_operand(in, a);
        check_float_operand(in, b);
      }
      require_type(in, a, in.type);
      require_type(in, b, in.type);
      return out(in, in.type);
    }

    case InstrKind::Compare: {
      auto a = expect_value(in.ops[0]);
      auto b = expect_value(in.ops[1]);
      if (in.type.fp) {
        if (in.cmp != CmpOp::Eq && in.cmp != CmpOp::Ne) {
          violation(in.loc, "unknown-opcode", "unsupported float comparison");
        }
        check_float_operand(in, a);
        check_float_operand(in, b);
      }
      require_type(in, a, in.type);
      require_type(in, b, in.type);
      return out(in, ValueType{32, in.type.secret, false});
    }

    case InstrKind::Eqz: {
      auto a = expect_value(in.ops[0]);
      require_type(in, a, in.type);
      return out(in, ValueType{32, in.type.secret, false});
    }

    case InstrKind::Select: {
      auto a = expect_value(in.ops[0]);
      auto b = expect_value(in.ops[1]);
      auto c = expect_value(in.ops[2]);
      if ((a && a->secret) || (b && b->secret) || (c && c->secret)) {
        violation(in.loc, "select-secrecy",
                  "select operates on public values only; use sselect");
        ValueType t = a ? *a : type_i32();
        return out(in, t);
      }
      if (a && b && *a != *b)
        violation(in.loc, "type-mismatch", "select arms differ in type");
      if (c && *c != type_i32())
        violation(in.loc, "type-mismatch", "select condition must be i32");
      return out(in, a ? *a : type_i32());
    }

    case InstrKind::SSelect: {
      auto a = expect_value(in.ops[0]);
      auto b = expect_value(in.ops[1]);
      auto c = expect_value(in.ops[2]);
      if (!in.type.secret) {
        violation(in.loc, "sselect-type", "sselect result type must be secret");
        return out(in, in.type);
      }
      if (a && *a != in.type)
        violation(in.loc, "sselect-type", "sselect arm is not " + type_name(in.type));
      if (b && *b != in.type)
        violation(in.loc, "sselect-type", "sselect arm is not " + type_name(in.type));
      if (c && *c != type_s32())
        violation(in.loc, "sselect-type", "sselect condition must be s32");
      return out(in, in.type);
    }

    case InstrKind::Load: {
      if (in.type.fp) {
        violation(in.loc, "malformed-type", "float memory access is not supported");
        return out(in, in.type);
      }
      resolve_memory(in);
      check_address(in, in.ops[0]);
      if (in.rMem >= 0) {
        const auto &mem = m.memories[in.rMem];
        if (mem.secret != in.type.secret)
          violation(in.loc, "load-secrecy",
                    "values loaded from a " +
                        std::string(mem.secret ? "secret" : "public") +
                        " memory must have a matching type");
      }
      return out(in, in.type);
    }

    case InstrKind::Store: {
      if (in.type.fp) {
        violation(in.loc, "malformed-type", "float memory access is not supported");
        return std::nullopt;
      }
      resolve_memory(in);
      check_address(in, in.ops[0]);
      auto v = expect_value(in.ops[1]);
      if (v && v->secret && !in.type.secret) {
        violation(in.loc, "store-secrecy",
                  "secret value stored through a public store");
      } else {
        require_type(in, v, in.type);
      }
      if (in.rMem >= 0) {
        const auto &mem = m.memories[in.rMem];
        if (in.type.secret != mem.secret)
          violation(in.loc, "store-secrecy",
                    std::string(in.type.secret ? "secret" : "public") +
                        " store targets a " +
                        (mem.secret ? "secret" : "public") + " memory");
      }
      return std::nullopt;
    }

    case InstrKind::LocalGet: {
      in.rLocal = resolve(localIdx, env.size(), in.name, in.loc, "local");
      if (in.rLocal < 0)
        return out(in, type_i32());
      return out(in, env[in.rLocal].type);
    }

    case InstrKind::LocalSet:
    case InstrKind::LocalTee: {
      in.rLocal = resolve(localIdx, env.size(), in.name, in.loc, "local");
      auto v = expect_value(in.ops[0]);
      if (in.rLocal >= 0)
        require_type(in, v, env[in.rLocal].type);
      if (in.kind == InstrKind::LocalTee && in.rLocal >= 0)
        return out(in, env[in.rLocal].type);
      return std::nullopt;
    }

    case InstrKind::GlobalGet: {
      in.rGlobal = resolve(globalIdx, m.globals.size(), in.name, in.loc, "global");
      if (in.rGlobal < 0)
        return out(in, type_i32());
      return out(in, m.globals[in.rGlobal].type);
    }

    case InstrKind::GlobalSet: {
      in.rGlobal = resolve(globalIdx, m.globals.size(), in.name, in.loc, "global");
      auto v = expect_value(in.ops[0]);
      if (in.rGlobal >= 0) {
        const auto &g = m.globals[in.rGlobal];
        if (!g.mut)
          violation(in.loc, "immutable-global",
                    "assignment to immutable global '" + in.name + "'");
        if (v && v->secret && !g.type.secret)
          violation(in.loc, "store-secrecy",
                    "secret value stored to public global '" + in.name + "'");
        else
          require_type(in, v, g.type);
      }
      return std::nullopt;
    }

    case InstrKind::Block:
    case InstrKind::Loop: {
      path.push_back(in.kind == InstrKind::Block ? "block" : "loop");
      labelDepth++;
      check_body(in.thenBody);
      labelDepth--;
      path.pop_back();
      return std::nullopt;
    }

    case InstrKind::If: {
      check_condition(in, in.ops[0]);
      path.push_back("if");
      labelDepth++;
      check_body(in.thenBody);
      check_body(in.elseBody);
      labelDepth--;
      path.pop_back();
      return std::nullopt;
    }

    case InstrKind::Br:
      if (in.label >= labelDepth)
        violation(in.loc, "bad-label", "br depth exceeds enclosing blocks");
      return std::nullopt;

    case InstrKind::BrIf:
      if (in.label >= labelDepth)
        violation(in.loc, "bad-label", "br_if depth exceeds enclosing blocks");
      check_condition(in, in.ops[0]);
      return std::nullopt;

    case InstrKind::Return: {
      if (in.ops.empty()) {
        if (!fn->results.empty())
          violation(in.loc, "result-type", "return without a value");
        return std::nullopt;
      }
      auto v = expect_value(in.ops[0]);
      if (fn->results.empty())
        violation(in.loc, "result-type", "return with a value in a void function");
      else
        require_type(in, v, fn->results[0]);
      return std::nullopt;
    }

    case InstrKind::Call: {
      in.rFunc = resolve(funcIdx, m.functions.size(), in.name, in.loc, "function");
      if (in.rFunc < 0)
        return std::nullopt;
      const auto &callee = m.functions[in.rFunc];
      if (!fn->trusted && callee.trusted)
        violation(in.loc, "call-trusted",
                  "untrusted function calls trusted '" + in.name + "'");
      if (in.ops.size() != callee.params.size())
        violation(in.loc, "type-mismatch",
                  "call argument count does not match '" + in.name + "'");
      for (size_t i = 0; i < in.ops.size(); i++) {
        auto a = expect_value(in.ops[i]);
        if (i < callee.params.size())
          require_type(in, a, callee.params[i].type);
      }
      if (callee.results.empty())
        return std::nullopt;
      return out(in, callee.results[0]);
    }

    case InstrKind::Drop: {
      expect_value(in.ops[0]);
      return std::nullopt;
    }

    case InstrKind::Nop:
      return std::nullopt;

    case InstrKind::Classify:
    case InstrKind::Declassify: {
      bool isDecl = in.kind == InstrKind::Declassify;
      if (!fn->trusted)
        violation(in.loc, "declassify-untrusted",
                  std::string(isDecl ? "declassify" : "classify") +
                      " is not allowed in untrusted functions");
      auto v = expect_value(in.ops[0]);
      if (v && v->fp) {
        violation(in.loc, "type-mismatch", "secrecy conversion on a float");
        return out(in, type_i32());
      }
      if (isDecl) {
        if (v && !v->secret)
          violation(in.loc, "type-mismatch", "declassify of a public value");
        return out(in, ValueType{v ? v->width : uint8_t(32), false, false});
      }
      if (v && v->secret)
        violation(in.loc, "type-mismatch", "classify of a secret value");
      return out(in, ValueType{v ? v->width : uint8_t(32), true, false});
    }

    case InstrKind::Convert: {
      auto v = expect_value(in.ops[0]);
      switch (in.conv) {
      case ConvOp::ExtendU: {
        if (in.type.width != 64 || in.type.fp)
          violation(in.loc, "malformed-type", "extend target must be 64-bit int");
        require_type(in, v, ValueType{32, in.type.secret, false});
        return out(in, in.type);
      }
      case ConvOp::Wrap: {
        if (in.type.width != 32 || in.type.fp)
          violation(in.loc, "malformed-type", "wrap target must be 32-bit int");
        require_type(in, v, ValueType{64, in.type.secret, false});
        return out(in, in.type);
      }
      case ConvOp::FConvertU: {
        if (!in.type.fp)
          violation(in.loc, "malformed-type", "convert target must be float");
        check_float_operand(in, v);
        require_type(in, v, type_i32());
        return out(in, in.type);
      }
      }
      return out(in, in.type);
    }
    }
    return std::nullopt;
  }

  std::optional<ValueType> out(Instr &in, ValueType t) {
    in.hasOut = true;
    in.outType = t;
    return t;
  }

  std::optional<ValueType> expect_value(Instr &in) {
    auto t = check(in);
    if (!t)
      violation(in.loc, "type-mismatch", "operand yields no value");
    return t;
  }

  void require_type(const Instr &at, std::optional<ValueType> got, ValueType want) {
    if (got && *got != want)
      violation(at.loc, "type-mismatch",
                "expected " + type_name(want) + ", got " + type_name(*got));
  }

  void check_float_operand(const Instr &at, std::optional<ValueType> got) {
    if (got && got->secret)
      violation(at.loc, "secret-float",
                "secret value used as a float operand");
  }

  void check_condition(Instr &in, Instr &cond) {
    auto c = expect_value(cond);
    if (c && c->secret) {
      violation(in.loc, "secret-branch", "branch condition depends on a secret");
      return;
    }
    require_type(in, c, type_i32());
  }

  void check_address(Instr &in, Instr &addr) {
    auto a = expect_value(addr);
    if (a && a->secret) {
      violation(in.loc, "secret-mem-index", "memory index depends on a secret");
      return;
    }
    require_type(in, a, type_i32());
  }

  void resolve_memory(Instr &in) {
    if (!in.memName.empty()) {
      in.rMem = resolve(memIdx, m.memories.size(), in.memName, in.loc, "memory");
      return;
    }
    int32_t found = -1;
    int matches = 0;
    for (size_t i = 0; i < m.memories.size(); i++) {
      if (m.memories[i].secret == in.type.secret) {
        found = static_cast<int32_t>(i);
        matches++;
      }
    }
    if (matches == 1) {
      in.rMem = found;
    } else {
      violation(in.loc, "unknown-name",
                std::string("no unique ") +
                    (in.type.secret ? "secret" : "public") +
                    " memory for implicit access");
    }
  }

  void check_body(std::vector<Instr> &body) {
    for (auto &in : body) {
      auto t = check(in);
      if (t)
        violation(in.loc, "unused-value",
                  "instruction value is unused here; wrap it in (drop ...)");
    }
  }

  void check_function(SourceFunction &f) {
    fn = &f;
    env.clear();
    localIdx.clear();
    labelDepth = 0;
    path.clear();
    path.push_back(f.name.empty() ? "<anon>" : f.name);
    for (const auto &p : f.params)
      env.push_back(p);
    for (const auto &l : f.locals)
      env.push_back(l);
    for (size_t i = 0; i < env.size(); i++) {
      if (env[i].name.empty())
        continue;
      if (!localIdx.emplace(env[i].name, static_cast<int32_t>(i)).second)
        violation(env[i].loc, "duplicate-name",
                  "local '" + env[i].name + "' defined twice");
    }

    if (f.body.empty()) {
      if (!f.results.empty())
        violation(f.loc, "result-type", "function has a result but no body");
      return;
    }
    for (size_t i = 0; i + 1 < f.body.size(); i++) {
      auto t = check(f.body[i]);
      if (t)
        violation(f.body[i].loc, "unused-value",
                  "instruction value is unused here; wrap it in (drop ...)");
    }
    Instr &last = f.body.back();
    auto t = check(last);
    if (!f.results.empty()) {
      if (!t && last.kind != InstrKind::Return)
        violation(last.loc, "result-type",
                  "function body must end in its result value or a return");
      if (t)
        require_type(last, t, f.results[0]);
    } else if (t) {
      violation(last.loc, "unused-value",
                "instruction value is unused here; wrap it in (drop ...)");
    }
  }

  static uint64_t count_instrs(const std::vector<Instr> &body) {
    uint64_t n = 0;
    for (const auto &in : body) {
      n += 1 + count_instrs(in.ops) + count_instrs(in.thenBody) +
           count_instrs(in.elseBody);
    }
    return n;
  }

  void run() {
    index_names(m.functions, funcIdx, "function");
    index_names(m.globals, globalIdx, "global");
    index_names(m.memories, memIdx, "memory");
    for (const auto &g : m.globals)
      count += 1;
    for (const auto &f : m.functions)
      count += count_instrs(f.body);
  }
};

} // namespace

TypecheckResult typecheck(const SourceModule &m) {
  TypecheckResult res;
  res.typed.mod = m; // annotate a copy
  Checker c(res.typed.mod);
  c.run();
  for (auto &f : res.typed.mod.functions)
    c.check_function(f);
  res.violations = std::move(c.diags);
  res.visits = c.visits;
  res.instrCount = std::max<uint64_t>(1, c.count);
  return res;
}

} // namespace ctw::front
