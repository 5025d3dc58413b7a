#pragma once

#include <memory>
#include <mutex>
#include <string>

namespace lexcourt::gateway {

class Clock {
 public:
  virtual ~Clock() = default;
  // Seconds since the Unix epoch.
  virtual double now() const = 0;
  virtual void sleep_for(double seconds) = 0;
  // ISO-8601 UTC with millisecond precision.
  std::string timestamp() const;
};

class SystemClock final : public Clock {
 public:
  double now() const override;
  void sleep_for(double seconds) override;
};

// Time only moves when someone sleeps. Deterministic CI runs use this.
class SimulatedClock final : public Clock {
 public:
  // 2024-01-01T00:00:00Z
  static constexpr double kDefaultStart = 1704067200.0;

  explicit SimulatedClock(double start = kDefaultStart) : now_(start) {}
  double now() const override;
  void sleep_for(double seconds) override;
  void advance(double seconds) { sleep_for(seconds); }

 private:
  mutable std::mutex mu_;
  double now_;
};

std::string iso8601(double epoch_seconds);

}  // namespace lexcourt::gateway
