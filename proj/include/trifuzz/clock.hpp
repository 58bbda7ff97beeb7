#pragma once

#include <chrono>
#include <cstdint>

namespace trifuzz {

// Campaign time in nanoseconds since some epoch.
using Tick = std::uint64_t;

// Injectable time source. Campaigns never read std::chrono directly, so a
// lockstep run driven by a VirtualClock is bit-for-bit reproducible.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Tick now() const = 0;
  // Charge a cost to the clock. Real clocks ignore this; the virtual clock
  // advances by it.
  virtual void advance(Tick /*ns*/) {}
};

class SteadyClock final : public Clock {
 public:
  SteadyClock() : start_(std::chrono::steady_clock::now()) {}
  Tick now() const override {
    return static_cast<Tick>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Deterministic clock advanced by instrumented work units.
class VirtualClock final : public Clock {
 public:
  Tick now() const override { return t_; }
  void advance(Tick ns) override { t_ += ns; }

 private:
  Tick t_ = 0;
};

// Virtual cost model: fixed per-unit charges so lockstep runs have a
// meaningful, reproducible notion of elapsed time.
namespace vcost {
inline constexpr Tick kExec = 10'000;       // one concrete execution
inline constexpr Tick kSolveStep = 100;     // one solver search step
inline constexpr Tick kSample = 2'000;      // one sampled point
inline constexpr Tick kCoordinate = 5'000;  // one coordinator iteration
}  // namespace vcost

}  // namespace trifuzz
