#include "lexcourt/gateway/clock.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <thread>

namespace lexcourt::gateway {

std::string iso8601(double epoch_seconds) {
  const auto whole = static_cast<std::time_t>(std::floor(epoch_seconds));
  const int millis = static_cast<int>(std::lround((epoch_seconds - std::floor(epoch_seconds)) * 1000.0)) % 1000;
  std::tm tm{};
  gmtime_r(&whole, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, millis);
  return buf;
}

std::string Clock::timestamp() const { return iso8601(now()); }

double SystemClock::now() const {
  using namespace std::chrono;
  return duration<double>(system_clock::now().time_since_epoch()).count();
}

void SystemClock::sleep_for(double seconds) {
  if (seconds > 0) std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

double SimulatedClock::now() const {
  std::lock_guard lock(mu_);
  return now_;
}

void SimulatedClock::sleep_for(double seconds) {
  if (seconds <= 0) return;
  std::lock_guard lock(mu_);
  now_ += seconds;
}

}  // namespace lexcourt::gateway
