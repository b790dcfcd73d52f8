#include "ctw/types.hpp"

#include <sstream>

namespace ctw {

std::string Diag::str() const {
  std::ostringstream os;
  os << (file.empty() ? "<input>" : file) << ":" << loc.line << ":" << loc.col
     << ": " << rule << ": " << message;
  if (!path.empty())
    os << " [at " << path << "]";
  return os.str();
}

std::string render_diags(const std::vector<Diag> &diags) {
  std::string out;
  for (const auto &d : diags) {
    out += d.str();
    out += '\n';
  }
  return out;
}

std::optional<ValueType> parse_value_type(const std::string &name) {
  if (name == "i32") return type_i32();
  if (name == "i64") return type_i64();
  if (name == "s32") return type_s32();
  if (name == "s64") return type_s64();
  if (name == "f32") return type_f32();
  if (name == "f64") return type_f64();
  return std::nullopt;
}

std::string type_name(ValueType t) {
  if (t.fp)
    return t.width == 32 ? "f32" : "f64";
  if (t.secret)
    return t.width == 32 ? "s32" : "s64";
  return t.width == 32 ? "i32" : "i64";
}

} // namespace ctw
