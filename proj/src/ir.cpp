#include "ctw/ir.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ctw::ir {

bool op_allows_dit(Op op) {
  switch (op) {
  case Op::Iconst:
  case Op::Iadd:
  case Op::Isub:
  case Op::Imul:
  case Op::Iand:
  case Op::Ior:
  case Op::Ixor:
  case Op::Ishl:
  case Op::Iushr:
  case Op::Isshr:
  case Op::Irotl:
  case Op::Irotr:
  case Op::IaddImm:
  case Op::Icmp:
  case Op::Bint:
  case Op::Select:
  case Op::Copy:
  case Op::Uextend:
  case Op::Ireduce:
    return true;
  default:
    return false;
  }
}

bool op_is_pure(Op op) {
  switch (op) {
  case Op::Load:
  case Op::Store:
  case Op::Gload:
  case Op::Gstore:
  case Op::Call:
    return false;
  default:
    return true;
  }
}

void compute_preds(SsaFunction &f) {
  for (auto &b : f.blocks)
    b.preds.clear();
  for (BlockId i = 0; i < f.blocks.size(); i++) {
    const auto &t = f.blocks[i].term;
    if (t.kind == Terminator::Kind::Jump) {
      f.blocks[t.taken].preds.push_back(i);
    } else if (t.kind == Terminator::Kind::Brnz) {
      f.blocks[t.taken].preds.push_back(i);
      f.blocks[t.fall].preds.push_back(i);
    }
  }
}

Value resolve_alias(const SsaFunction &f, Value v) {
  // Alias instructions are sparse; build is cheap relative to pass work, so
  // callers that resolve many values should use their own map.
  for (int guard = 0; guard < 64; guard++) {
    bool found = false;
    for (const auto &b : f.blocks) {
      for (const auto &in : b.insts) {
        if (in.op == Op::Alias && in.result == v) {
          v = in.args[0];
          found = true;
          break;
        }
      }
      if (found)
        break;
    }
    if (!found)
      return v;
  }
  return v;
}

std::vector<std::string> validate(const SsaFunction &f) {
  std::vector<std::string> problems;
  std::vector<int> defCount(f.num_values(), 0);
  auto def = [&](Value v, const char *what) {
    if (v == kNoValue)
      return;
    if (v >= defCount.size()) {
      problems.push_back(std::string("value id out of range in ") + what);
      return;
    }
    defCount[v]++;
  };
  for (const auto &b : f.blocks) {
    for (Value p : b.params)
      def(p, "block params");
    for (const auto &in : b.insts)
      def(in.result, "instruction results");
  }
  for (uint32_t v = 0; v < defCount.size(); v++) {
    if (defCount[v] > 1)
      problems.push_back("value v" + std::to_string(v) + " assigned " +
                         std::to_string(defCount[v]) + " times");
  }
  for (BlockId i = 0; i < f.blocks.size(); i++) {
    const auto &t = f.blocks[i].term;
    auto check_edge = [&](BlockId dst, const std::vector<Value> &args) {
      if (dst >= f.blocks.size()) {
        problems.push_back("branch to missing block from block" + std::to_string(i));
        return;
      }
      if (args.size() != f.blocks[dst].params.size())
        problems.push_back("argument count mismatch on edge block" +
                           std::to_string(i) + " -> block" + std::to_string(dst));
    };
    switch (t.kind) {
    case Terminator::Kind::Jump:
      check_edge(t.taken, t.takenArgs);
      break;
    case Terminator::Kind::Brnz:
      if (t.cond == kNoValue)
        problems.push_back("brnz without a condition in block" + std::to_string(i));
      check_edge(t.taken, t.takenArgs);
      check_edge(t.fall, t.fallArgs);
      break;
    case Terminator::Kind::Return:
      if (t.retVals.size() > 1)
        problems.push_back("multi-value return in block" + std::to_string(i));
      break;
    }
  }
  return problems;
}

SsaFunction params_to_phi(const SsaFunction &f) {
  SsaFunction out = f;
  compute_preds(out);

  for (BlockId b = 0; b < out.blocks.size(); b++) {
    Block &blk = out.blocks[b];
    if (b == out.entry || blk.params.empty())
      continue;
    // Enumerate incoming edges in the same order compute_preds produced,
    // one entry per edge (a brnz may contribute two edges to one block).
    struct Edge {
      BlockId pred;
      const std::vector<Value> *args;
    };
    std::vector<Edge> edges;
    for (BlockId p = 0; p < out.blocks.size(); p++) {
      const Terminator &t = out.blocks[p].term;
      if (t.kind == Terminator::Kind::Jump) {
        if (t.taken == b)
          edges.push_back({p, &t.takenArgs});
      } else if (t.kind == Terminator::Kind::Brnz) {
        if (t.taken == b)
          edges.push_back({p, &t.takenArgs});
        if (t.fall == b)
          edges.push_back({p, &t.fallArgs});
      }
    }
    std::vector<Inst> phis;
    for (size_t pi = 0; pi < blk.params.size(); pi++) {
      Inst phi;
      phi.op = Op::Phi;
      phi.result = blk.params[pi];
      for (const Edge &e : edges)
        phi.args.push_back((*e.args)[pi]);
      phis.push_back(std::move(phi));
    }
    blk.insts.insert(blk.insts.begin(), phis.begin(), phis.end());
    blk.params.clear();
  }

  // Clear edge arguments into blocks that now use phis.
  for (auto &blk : out.blocks) {
    auto &t = blk.term;
    auto clear_if_phi = [&](BlockId dst, std::vector<Value> &args) {
      if (dst != kNoBlock && dst != out.entry && out.blocks[dst].params.empty())
        args.clear();
    };
    if (t.kind == Terminator::Kind::Jump) {
      clear_if_phi(t.taken, t.takenArgs);
    } else if (t.kind == Terminator::Kind::Brnz) {
      clear_if_phi(t.taken, t.takenArgs);
      clear_if_phi(t.fall, t.fallArgs);
    }
  }
  return out;
}

} // namespace ctw::ir
