#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trifuzz/icfg.hpp"
#include "trifuzz/program.hpp"

namespace trifuzz {

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000;

struct Decision {
  std::uint32_t site = 0;  // gid of the CondBranch block
  bool taken = false;      // condition was nonzero
  bool operator==(const Decision&) const = default;
};

struct CrashInfo {
  CrashKind kind;
  std::vector<std::uint32_t> stack;  // function indices, innermost first
};

enum class Outcome : std::uint8_t { Normal, Crash, StepBudgetExceeded };

struct Trace {
  std::vector<Edge> edges;         // every taken edge, in order (a multiset)
  std::vector<Decision> decisions; // one entry per executed CondBranch
  Outcome outcome = Outcome::Normal;
  std::optional<CrashInfo> crash;
  std::uint64_t steps = 0;
};

// FNV-style digest of the decision sequence; identifies the path.
std::uint64_t path_hash(const std::vector<Decision>& decisions);

class ExecObserver;
Trace execute(const TargetProgram&, std::span<const std::uint8_t>, std::uint64_t,
              ExecObserver*);

// Concrete machine state, readable by observers.
class Machine {
 public:
  Machine(const TargetProgram& p);
  Word reg(std::uint8_t r) const { return regs_[r]; }
  Word buffer_cell(std::uint16_t buf, std::uint64_t idx) const {
    return buffers_[buf][idx];
  }
  std::uint64_t buffer_size(std::uint16_t buf) const { return buffers_[buf].size(); }
  std::uint32_t current_fn() const { return fn_; }

 private:
  friend Trace execute(const TargetProgram&, std::span<const std::uint8_t>,
                       std::uint64_t, ExecObserver*);
  std::vector<Word> regs_;
  std::vector<std::vector<Word>> buffers_;
  std::uint32_t fn_ = 0;
};

// Hooks for the concolic executor. Called only for instructions that
// completed without crashing; on_branch fires after the condition is read
// and before control transfers.
class ExecObserver {
 public:
  virtual ~ExecObserver() = default;
  virtual void on_instruction(const Instruction&, const Machine&) {}
  virtual void on_branch(std::uint32_t /*site_gid*/, std::uint8_t /*cond_reg*/,
                         bool /*taken*/, const Machine&) {}
};

// Deterministic interpretation of `p` on `input`. The interpreter is
// stateless between calls; traces are safe to build concurrently.
// Throws std::invalid_argument when input size != p.input_len.
inline Trace execute(const TargetProgram& p, std::span<const std::uint8_t> input,
                     std::uint64_t step_budget = kDefaultStepBudget) {
  return execute(p, input, step_budget, nullptr);
}

}  // namespace trifuzz
