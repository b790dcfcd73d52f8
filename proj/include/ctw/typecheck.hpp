#pragma once

#include "ctw/ast.hpp"

namespace ctw::front {

// A type-checked module: same tree, with outType/hasOut and the resolved
// index fields filled in on every instruction.
struct TypedModule {
  SourceModule mod;
};

struct TypecheckResult {
  TypedModule typed;
  std::vector<Diag> violations;
  // instruction-visit accounting; the checker is linear in program size
  uint64_t visits = 0;
  uint64_t instrCount = 0;
  bool ok() const { return violations.empty(); }
};

// Secrecy rule identifiers, used verbatim in diagnostics:
//   secret-branch         secret value as br_if/if condition
//   secret-mem-index      secret value as load/store address
//   secret-float          secret value fed to a float-class operation
//   declassify-untrusted  classify/declassify inside an untrusted function
//   load-secrecy          load type secrecy does not match the memory
//   store-secrecy         secret value stored to a public memory/global
//   sselect-type          sselect condition/arm typing broken
//   call-trusted          untrusted function calls a trusted function
//   select-secrecy        plain select given a secret operand
TypecheckResult typecheck(const SourceModule &m);

} // namespace ctw::front
