#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctw {

// Source position, 1-based. line == 0 means "no position".
struct SrcLoc {
  uint32_t line = 0;
  uint32_t col = 0;
};

// One diagnostic, printed as `file:line:col: rule-id: message`.
struct Diag {
  std::string file;
  SrcLoc loc;
  std::string rule;
  std::string message;
  std::string path; // instruction path inside the module, e.g. "update/loop/br_if"

  std::string str() const;
};

std::string render_diags(const std::vector<Diag> &diags);

// Value type of the source dialect: i32/i64/s32/s64/f32/f64.
// Secret types are integer-only; the parser cannot produce a secret float.
struct ValueType {
  uint8_t width = 32; // 32 or 64
  bool secret = false;
  bool fp = false;

  bool operator==(const ValueType &o) const {
    return width == o.width && secret == o.secret && fp == o.fp;
  }
  bool operator!=(const ValueType &o) const { return !(*this == o); }
};

inline ValueType type_i32() { return {32, false, false}; }
inline ValueType type_i64() { return {64, false, false}; }
inline ValueType type_s32() { return {32, true, false}; }
inline ValueType type_s64() { return {64, true, false}; }
inline ValueType type_f32() { return {32, false, true}; }
inline ValueType type_f64() { return {64, false, true}; }

std::optional<ValueType> parse_value_type(const std::string &name);
std::string type_name(ValueType t);

} // namespace ctw
