#include "trifuzz/interp.hpp"

#include <stdexcept>

namespace trifuzz {

std::uint64_t path_hash(const std::vector<Decision>& decisions) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Decision& d : decisions) {
    h ^= d.site;
    h *= 0x100000001b3ULL;
    h ^= d.taken ? 0x9e3779b97f4a7c15ULL : 0x2545f4914f6cdd1dULL;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Machine::Machine(const TargetProgram& p) {
  regs_.assign(p.reg_count, 0);
  for (const auto& [name, size] : p.buffers) buffers_.emplace_back(size, 0);
  fn_ = p.entry;
}

namespace {

Word operand_value(const Operand& o, const std::vector<Word>& regs) {
  return o.imm ? o.value : regs[o.reg];
}

}  // namespace

Trace execute(const TargetProgram& p, std::span<const std::uint8_t> input,
              std::uint64_t step_budget, ExecObserver* observer) {
  if (input.size() != p.input_len)
    throw std::invalid_argument("input length " + std::to_string(input.size()) +
                                " != declared " + std::to_string(p.input_len));

  Trace trace;
  Machine m(p);
  auto& regs = m.regs_;

  struct Frame {
    std::uint32_t fn;
    std::uint32_t return_block;
  };
  std::vector<Frame> stack;

  std::uint32_t fn = p.entry;
  std::uint32_t blk = 0;

  auto crash = [&](CrashKind kind) {
    trace.outcome = Outcome::Crash;
    CrashInfo ci;
    ci.kind = kind;
    ci.stack.push_back(fn);
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      ci.stack.push_back(it->fn);
    trace.crash = ci;
  };

  while (true) {
    const BasicBlock& block = p.functions[fn].blocks[blk];
    m.fn_ = fn;

    bool crashed = false;
    for (const Instruction& ins : block.instructions) {
      if (trace.steps >= step_budget) {
        trace.outcome = Outcome::StepBudgetExceeded;
        return trace;
      }
      ++trace.steps;
      Word a = operand_value(ins.a, regs);
      Word b = operand_value(ins.b, regs);
      switch (ins.op) {
        case Opcode::LoadInput:
          regs[ins.dst] = input[static_cast<std::size_t>(ins.a.value)];
          break;
        case Opcode::Const:
          regs[ins.dst] = ins.a.value;
          break;
        case Opcode::Add: regs[ins.dst] = a + b; break;
        case Opcode::Sub: regs[ins.dst] = a - b; break;
        case Opcode::Mul: regs[ins.dst] = a * b; break;
        case Opcode::DivU:
          if (b == 0) { crash(CrashKind::DivByZero); crashed = true; break; }
          regs[ins.dst] = a / b;
          break;
        case Opcode::ModU:
          if (b == 0) { crash(CrashKind::DivByZero); crashed = true; break; }
          regs[ins.dst] = a % b;
          break;
        case Opcode::And: regs[ins.dst] = a & b; break;
        case Opcode::Or:  regs[ins.dst] = a | b; break;
        case Opcode::Xor: regs[ins.dst] = a ^ b; break;
        case Opcode::Shl: regs[ins.dst] = a << (b & 63); break;
        case Opcode::Shr: regs[ins.dst] = a >> (b & 63); break;
        case Opcode::CmpEq: regs[ins.dst] = a == b ? 1 : 0; break;
        case Opcode::CmpNe: regs[ins.dst] = a != b ? 1 : 0; break;
        case Opcode::CmpLtS:
          regs[ins.dst] =
              static_cast<std::int64_t>(a) < static_cast<std::int64_t>(b) ? 1 : 0;
          break;
        case Opcode::CmpLeS:
          regs[ins.dst] =
              static_cast<std::int64_t>(a) <= static_cast<std::int64_t>(b) ? 1 : 0;
          break;
        case Opcode::CmpLtU: regs[ins.dst] = a < b ? 1 : 0; break;
        case Opcode::CmpLeU: regs[ins.dst] = a <= b ? 1 : 0; break;
        case Opcode::BufWrite:
          if (a >= m.buffers_[ins.buffer].size()) {
            crash(CrashKind::BufOverflow);
            crashed = true;
            break;
          }
          m.buffers_[ins.buffer][a] = b;
          break;
        case Opcode::BufRead:
          if (a >= m.buffers_[ins.buffer].size()) {
            crash(CrashKind::BufOverflow);
            crashed = true;
            break;
          }
          regs[ins.dst] = m.buffers_[ins.buffer][a];
          break;
        case Opcode::Assert:
          if (a == 0) { crash(CrashKind::AssertFail); crashed = true; }
          break;
      }
      if (crashed) return trace;
      if (observer) observer->on_instruction(ins, m);
    }

    if (trace.steps >= step_budget) {
      trace.outcome = Outcome::StepBudgetExceeded;
      return trace;
    }
    ++trace.steps;

    const Terminator& t = block.term;
    std::uint32_t src = p.gid(fn, blk);
    switch (t.kind) {
      case TermKind::Jump:
        trace.edges.push_back({src, p.gid(fn, t.target)});
        blk = t.target;
        break;
      case TermKind::CondBranch: {
        bool taken = regs[t.cond_reg] != 0;
        if (observer) observer->on_branch(src, t.cond_reg, taken, m);
        trace.decisions.push_back({src, taken});
        std::uint32_t next = taken ? t.target : t.alt_target;
        trace.edges.push_back({src, p.gid(fn, next)});
        blk = next;
        break;
      }
      case TermKind::Call:
        trace.edges.push_back({src, p.gid(t.callee, 0)});
        stack.push_back({fn, t.return_block});
        fn = t.callee;
        blk = 0;
        break;
      case TermKind::Return:
        if (stack.empty()) {
          trace.outcome = Outcome::Normal;
          return trace;
        } else {
          Frame f = stack.back();
          stack.pop_back();
          trace.edges.push_back({src, p.gid(f.fn, f.return_block)});
          fn = f.fn;
          blk = f.return_block;
        }
        break;
      case TermKind::Halt:
        trace.outcome = Outcome::Normal;
        return trace;
      case TermKind::Crash:
        crash(t.crash_kind);
        return trace;
    }
  }
}

}  // namespace trifuzz
