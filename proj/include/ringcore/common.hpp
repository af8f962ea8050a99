#ifndef RINGCORE_COMMON_HPP
#define RINGCORE_COMMON_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ringcore {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files. Carries a 1-based position when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(Format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string Format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

// Parameters or inputs that are well-formed but cannot be used together.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Index of a point inside an immutable metric backend store.
struct PointId {
  std::size_t value = 0;

  friend constexpr auto operator<=>(PointId, PointId) = default;
};

using Rng = std::mt19937_64;

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for a (seed, a, b) triple.
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return SplitMix64(SplitMix64(seed ^ SplitMix64(a + 1)) ^ SplitMix64(b + 0x51ed270b27ULL));
}

inline double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Index drawn with probability proportional to its mass, given inclusive
// prefix sums of the masses. Requires a positive total.
inline std::size_t SampleProportional(const std::vector<double>& cumulative, Rng& rng) {
  const double u = Uniform01(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
  if (idx == cumulative.size()) {
    // u rounded up to the total; take the last entry with positive mass.
    idx = cumulative.size() - 1;
    while (idx > 0 && cumulative[idx] == cumulative[idx - 1]) --idx;
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Worker concurrency. A single global cap (0 = hardware concurrency) bounds
// every parallel_for; nested calls from inside a worker run serially.

inline std::atomic<unsigned>& ThreadCapStorage() {
  static std::atomic<unsigned> cap{0};
  return cap;
}

inline void SetThreadCap(unsigned cap) { ThreadCapStorage().store(cap); }

inline unsigned ThreadCap() {
  unsigned cap = ThreadCapStorage().load();
  if (cap == 0) cap = std::max(1u, std::thread::hardware_concurrency());
  return cap;
}

namespace detail {
inline bool& InWorker() {
  thread_local bool in_worker = false;
  return in_worker;
}
}  // namespace detail

template <typename Fn>
void ParallelFor(std::size_t count, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(ThreadCap(), count));
  if (workers <= 1 || detail::InWorker()) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    detail::InWorker() = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
    detail::InWorker() = false;
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
  }
  if (failure) std::rethrow_exception(failure);
}

// dist^z with the common powers special-cased.
inline double PowZ(double d, double z) {
  if (z == 1.0) return d;
  if (z == 2.0) return d * d;
  return std::pow(d, z);
}

}  // namespace ringcore

#endif  // RINGCORE_COMMON_HPP
