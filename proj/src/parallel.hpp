#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <thread>
#include <vector>

namespace sharpineq {

// Worker count from SHARPINEQ_THREADS, else the hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("SHARPINEQ_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Runs body(lo, hi, chunk) on contiguous slices of [0, n); results are
// collected per chunk so any reduction over chunks has a fixed order.
template <class Body>
void parallel_chunks(std::int64_t n, unsigned chunks, Body&& body) {
  chunks = std::max(1u, std::min<unsigned>(chunks, static_cast<unsigned>(std::max<std::int64_t>(n, 1))));
  if (chunks == 1) {
    body(std::int64_t(0), n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned c = 0; c < chunks; ++c) {
    std::int64_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
    pool.emplace_back([&body, lo, hi, c] { body(lo, hi, c); });
  }
  for (auto& t : pool) t.join();
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent generator per trial, so results do not depend on scheduling.
inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ull)));
}

}  // namespace sharpineq
