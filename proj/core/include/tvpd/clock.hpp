#pragma once

#include <chrono>
#include <cstdint>

namespace tvpd {

/// Seconds-since-epoch time source consulted by the validity-window gate.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::uint64_t now() const = 0;
};

class SystemClock final : public Clock {
 public:
  std::uint64_t now() const override {
    const auto since_epoch = std::chrono::system_clock::now().time_since_epoch();
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::seconds>(since_epoch).count());
  }
};

class FixedClock final : public Clock {
 public:
  explicit FixedClock(std::uint64_t now = 0) : now_(now) {}
  std::uint64_t now() const override { return now_; }
  void set(std::uint64_t now) { now_ = now; }
  void advance(std::uint64_t seconds) { now_ += seconds; }

 private:
  std::uint64_t now_;
};

}  // namespace tvpd
