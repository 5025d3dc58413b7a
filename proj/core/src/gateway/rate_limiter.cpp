#include "lexcourt/gateway/rate_limiter.hpp"

#include "lexcourt/errors.hpp"

namespace lexcourt::gateway {

RateLimiter::RateLimiter(int per_minute, std::shared_ptr<Clock> clock)
    : per_minute_(per_minute), clock_(std::move(clock)) {
  if (per_minute_ < 1) throw PreconditionError("requests_per_minute must be >= 1");
  if (!clock_) throw PreconditionError("rate limiter needs a clock");
}

double RateLimiter::acquire() {
  std::lock_guard lock(mu_);
  const double start = clock_->now();
  double now = start;
  for (;;) {
    while (!admitted_.empty() && admitted_.front() + kWindow <= now) admitted_.pop_front();
    if (static_cast<int>(admitted_.size()) < per_minute_) break;
    clock_->sleep_for(admitted_.front() + kWindow - now);
    now = clock_->now();
  }
  admitted_.push_back(now);
  return now - start;
}

}  // namespace lexcourt::gateway
