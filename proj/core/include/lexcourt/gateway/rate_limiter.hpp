#pragma once

#include <deque>
#include <memory>
#include <mutex>

#include "lexcourt/gateway/clock.hpp"

namespace lexcourt::gateway {

// Sliding-window limiter: at most `per_minute` admissions in any 60 s window.
// Admission blocks (through the clock) until the oldest admission in the
// window ages out.
class RateLimiter {
 public:
  RateLimiter(int per_minute, std::shared_ptr<Clock> clock);

  // Returns the number of seconds the caller was held back.
  double acquire();

  int per_minute() const noexcept { return per_minute_; }

 private:
  static constexpr double kWindow = 60.0;
  int per_minute_;
  std::shared_ptr<Clock> clock_;
  std::mutex mu_;
  std::deque<double> admitted_;
};

}  // namespace lexcourt::gateway
