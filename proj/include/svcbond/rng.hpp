#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace svcbond {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x00000100000001b3ull;

constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = kFnvOffset) {
    std::uint64_t h = seed;
    for (char c : data) {
        h ^= static_cast<std::uint8_t>(c);
        h *= kFnvPrime;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Named random stream: (scenario seed, entity, purpose) fix the whole
// sequence, so per-entity draws stay stable however events are reordered
// within a tick.
class RngStream {
  public:
    RngStream(std::uint64_t scenario_seed, std::string_view entity, std::string_view purpose)
        : state_(fnv1a64(purpose, fnv1a64(entity, kFnvOffset ^ scenario_seed))) {
        // one warm-up step decorrelates nearby seeds
        splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_;
};

// Order-sensitive FNV-1a digest over event log lines.
class LogDigest {
  public:
    void feed(std::string_view line) {
        hash_ = fnv1a64(line, hash_);
        hash_ = fnv1a64("\n", hash_);
    }
    std::uint64_t value() const { return hash_; }

  private:
    std::uint64_t hash_ = kFnvOffset;
};

std::string to_hex(std::uint64_t value);

}  // namespace svcbond
