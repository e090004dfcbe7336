#pragma once

#include <cstdint>
#include <deque>
#include <random>

#include "bix/bytes.hpp"
#include "bix/errors.hpp"

namespace bix {

/// Injected randomness source. Single-consumer: never share one instance
/// between concurrently running operations.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(uint8_t* out, size_t len) = 0;

  Bytes bytes(size_t len) {
    Bytes b(len);
    if (len) fill(b.data(), len);
    return b;
  }

  uint64_t next_u64() {
    uint8_t buf[8];
    fill(buf, 8);
    uint64_t v = 0;
    for (uint8_t c : buf) v = (v << 8) | c;
    return v;
  }
};

/// Deterministic rng: identical seeds give identical byte streams on every
/// platform (mt19937_64 is fully specified by the standard).
class SeededRng final : public Rng {
 public:
  explicit SeededRng(uint64_t seed) : gen_(seed) {}

  void fill(uint8_t* out, size_t len) override {
    while (len) {
      if (avail_ == 0) {
        word_ = gen_();
        avail_ = 8;
      }
      *out++ = static_cast<uint8_t>(word_ >> (8 * (avail_ - 1)));
      --avail_;
      --len;
    }
  }

 private:
  std::mt19937_64 gen_;
  uint64_t word_ = 0;
  int avail_ = 0;
};

/// Replays a fixed queue of byte strings; used by tests to force specific
/// scalars (d, k) into keygen and signing.
class ScriptedRng final : public Rng {
 public:
  explicit ScriptedRng(std::deque<Bytes> draws) : draws_(std::move(draws)) {}

  void fill(uint8_t* out, size_t len) override {
    if (draws_.empty()) throw ConfigError("scripted rng exhausted");
    Bytes draw = std::move(draws_.front());
    draws_.pop_front();
    if (draw.size() != len)
      throw ConfigError("scripted rng draw size mismatch");
    std::copy(draw.begin(), draw.end(), out);
  }

 private:
  std::deque<Bytes> draws_;
};

}  // namespace bix
